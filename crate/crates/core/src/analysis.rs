//! Explicit spherical codes and the inequalities they must satisfy: maximal
//! inner product, two-point distance distribution, moments `s_k(C, I)`,
//! the Pfender and cap constraints, and the three-point Gram condition.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::constructions::golay24_words;
use crate::error::{Error, Result};
use crate::report::{BoundReport, Certificate, Method};

/// Inner products closer than this share a distribution bucket.
pub const MERGE_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-12;
const RENORMALIZE_TOL: f64 = 1e-6;
const RANK_TOL: f64 = 1e-8;

/// A finite set of unit vectors in `R^n`, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalCode {
    n: usize,
    coords: Vec<f64>,
    /// Maximal inner product established by a symmetry argument instead of
    /// the all-pairs scan (set only for codes too large to scan).
    #[serde(skip)]
    certified_max: Option<f64>,
    /// `(representative, orbit size)` under a group of isometries certified
    /// to preserve the code; every row of an orbit sees the same inner
    /// products, so pair statistics only need the representatives.
    #[serde(skip)]
    orbits: Option<Vec<(usize, usize)>>,
}

impl SphericalCode {
    /// Validates unit norms (within 1e-12) and that the vectors span `R^n`.
    pub fn new(n: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let code = Self::from_rows(n, vectors)?;
        for (i, v) in code.iter().enumerate() {
            let norm = dot(v, v).sqrt();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::DomainError(format!(
                    "vector {i} has norm {norm}, not 1"
                )));
            }
        }
        code.check_rank()?;
        Ok(code)
    }

    /// Like [`SphericalCode::new`] but rescales vectors whose norm is within
    /// 1e-6 of one; anything further off is rejected.
    pub fn normalized(n: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let mut out = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.into_iter().enumerate() {
            let norm = dot(&v, &v).sqrt();
            if (norm - 1.0).abs() > RENORMALIZE_TOL {
                return Err(Error::DomainError(format!(
                    "vector {i} has norm {norm}, too far from 1 to renormalize"
                )));
            }
            out.push(v.iter().map(|x| x / norm).collect());
        }
        Self::new(n, out)
    }

    fn from_rows(n: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if n == 0 || vectors.is_empty() {
            return Err(Error::PreconditionViolated("empty spherical code".into()));
        }
        let mut coords = Vec::with_capacity(n * vectors.len());
        for v in &vectors {
            if v.len() != n {
                return Err(Error::InconsistentLengths);
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::Parse("non-finite coordinate".into()));
            }
            coords.extend_from_slice(v);
        }
        Ok(Self {
            n,
            coords,
            certified_max: None,
            orbits: None,
        })
    }

    fn check_rank(&self) -> Result<()> {
        // Modified Gram-Schmidt, stopping once the basis is complete.
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(self.n);
        for v in self.iter() {
            if basis.len() == self.n {
                break;
            }
            let mut w = v.to_vec();
            for b in &basis {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
            let norm = dot(&w, &w).sqrt();
            if norm > RANK_TOL {
                basis.push(w.iter().map(|x| x / norm).collect());
            }
        }
        if basis.len() < self.n {
            return Err(Error::Degenerate(format!(
                "vectors span {} of {} dimensions",
                basis.len(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.coords[i * self.n..(i + 1) * self.n]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Parses one vector per line, whitespace-separated decimals. Blank lines
/// and lines starting with `#` are skipped.
pub fn parse_points(text: &str) -> Result<SphericalCode> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("line {}: bad number {tok:?}", lineno + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    let n = rows
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::Parse("no vectors".into()))?;
    SphericalCode::normalized(n, rows)
}

/// Runs `per_row` over `rows` in parallel chunks, keeping row order.
fn par_rows<T: Send>(rows: &[usize], per_row: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let len = rows.len();
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(16);
    if len < 512 || workers == 1 {
        return rows.iter().map(|&i| per_row(i)).collect();
    }
    let chunk = len.div_ceil(workers);
    std::thread::scope(|scope| {
        let per_row = &per_row;
        let handles: Vec<_> = rows
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|&i| per_row(i)).collect::<Vec<T>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("analysis worker panicked"))
            .collect()
    })
}

/// Rows to scan with their multiplicities: orbit representatives when a
/// symmetry certificate is present, every row once otherwise.
fn weighted_rows(code: &SphericalCode) -> (Vec<usize>, Vec<usize>) {
    match &code.orbits {
        Some(o) => o.iter().copied().unzip(),
        None => ((0..code.len()).collect(), vec![1; code.len()]),
    }
}

/// `s(C)`, the largest inner product between distinct vectors.
pub fn max_inner_product(code: &SphericalCode) -> Result<f64> {
    if code.len() < 2 {
        return Err(Error::SingletonCode);
    }
    if let Some(s) = code.certified_max {
        return Ok(s);
    }
    let (rows, _) = weighted_rows(code);
    let maxima = par_rows(&rows, |i| {
        let x = code.vector(i);
        let from = if code.orbits.is_some() { 0 } else { i + 1 };
        (from..code.len())
            .filter(|&j| j != i)
            .map(|j| dot(x, code.vector(j)))
            .fold(f64::NEG_INFINITY, f64::max)
    });
    Ok(maxima.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// Two-point distance distribution: `A_t` is the number of ordered pairs
/// `(x, y)` in `C^2` with `<x, y> = t`, divided by `|C|`. The diagonal lands
/// in the `t = 1` bucket, so the `A_t` sum to `|C|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceDistribution {
    pub size: usize,
    /// `(t, A_t)` in increasing `t`.
    pub buckets: Vec<(f64, f64)>,
}

impl DistanceDistribution {
    /// `|C| * sum_{t in I} A_t t^k`.
    pub fn moment(&self, interval: Interval, k: u32) -> f64 {
        self.size as f64
            * self
                .buckets
                .iter()
                .filter(|(t, _)| interval.contains(*t))
                .map(|(t, a)| a * t.powi(k as i32))
                .sum::<f64>()
    }
}

pub fn two_point_distribution(code: &SphericalCode) -> Result<DistanceDistribution> {
    if code.len() < 2 {
        return Err(Error::SingletonCode);
    }
    let (rows, weights) = weighted_rows(code);
    let mut values: Vec<(f64, usize)> = par_rows(&rows, |i| {
        let x = code.vector(i);
        (0..code.len())
            .map(|j| dot(x, code.vector(j)))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .zip(weights)
    .flat_map(|(row, w)| row.into_iter().map(move |t| (t, w)))
    .collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let size = code.len();
    let mut buckets: Vec<(f64, f64)> = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let head = values[start].0;
        let mut end = start;
        while end < values.len() && values[end].0 - head <= MERGE_TOL {
            end += 1;
        }
        let count: usize = values[start..end].iter().map(|v| v.1).sum();
        let mean = values[start..end]
            .iter()
            .map(|v| v.0 * v.1 as f64)
            .sum::<f64>()
            / count as f64;
        buckets.push((mean, count as f64 / size as f64));
        start = end;
    }
    Ok(DistanceDistribution { size, buckets })
}

/// A half-open interval `[lo, hi)` of inner products. Membership allows the
/// bucket merge tolerance on both ends, so a value within 1e-9 of `hi` is
/// outside and one within 1e-9 of `lo` is inside.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo >= -1.0 && lo <= hi && hi <= 1.0) {
            return Err(Error::PreconditionViolated(format!(
                "interval [{lo}, {hi}) not within [-1, 1)"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo - MERGE_TOL && t < self.hi - MERGE_TOL
    }
}

/// `s_k(C, I)`: the sum of `<x, y>^k` over ordered pairs of distinct vectors
/// whose inner product lies in `I`.
pub fn s_k_moment(code: &SphericalCode, interval: Interval, k: u32) -> f64 {
    let (rows, weights) = weighted_rows(code);
    par_rows(&rows, |i| {
        let x = code.vector(i);
        (0..code.len())
            .filter(|&j| j != i)
            .map(|j| dot(x, code.vector(j)))
            .filter(|&t| interval.contains(t))
            .map(|t| t.powi(k as i32))
            .sum::<f64>()
    })
    .into_iter()
    .zip(weights)
    .map(|(v, w)| v * w as f64)
    .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PfenderReport {
    pub s: f64,
    pub interval: Interval,
    pub s0: f64,
    pub s2: f64,
    /// `s_0 s + |C| (1 - s)`.
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

fn check_code_s(code: &SphericalCode, s: f64) -> Result<()> {
    let sc = max_inner_product(code)?;
    if sc > s + 1e-12 {
        return Err(Error::PreconditionViolated(format!(
            "s(C) = {sc} exceeds s = {s}"
        )));
    }
    Ok(())
}

/// Pfender's inequality `s_2(C, I) <= s_0(C, I) s + |C| (1 - s)` on
/// `I = [-1, -sqrt(s))`.
pub fn check_pfender(code: &SphericalCode, s: f64) -> Result<PfenderReport> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::OutOfRange(s));
    }
    check_code_s(code, s)?;
    let interval = Interval::new(-1.0, -s.sqrt())?;
    let s0 = s_k_moment(code, interval, 0);
    let s2 = s_k_moment(code, interval, 2);
    let rhs = s0 * s + code.len() as f64 * (1.0 - s);
    let slack = rhs - s2;
    Ok(PfenderReport {
        s,
        interval,
        s0,
        s2,
        rhs,
        slack,
        holds: slack >= -1e-9 * rhs.abs().max(1.0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapReport {
    pub m: usize,
    pub t: f64,
    pub s0: f64,
    /// `m |C|`.
    pub limit: f64,
    pub slack: f64,
    pub holds: bool,
}

/// Cap threshold `sqrt(s + (1 - s) / (m + 1))`: a cap of angular radius
/// `arccos t` holds at most `m` points of an `s`-code besides its centre.
pub fn cap_threshold(m: usize, s: f64) -> f64 {
    (s + (1.0 - s) / (m as f64 + 1.0)).sqrt()
}

/// `s_0(C, [-1, -t)) <= m |C|` with `t` from [`cap_threshold`].
pub fn check_cap_constraint(code: &SphericalCode, m: usize, s: f64) -> Result<CapReport> {
    if !(-1.0..1.0).contains(&s) {
        return Err(Error::OutOfRange(s));
    }
    if s + (1.0 - s) / (m as f64 + 1.0) < 0.0 {
        return Err(Error::DomainError(format!(
            "cap threshold undefined for m = {m}, s = {s}"
        )));
    }
    check_code_s(code, s)?;
    check_cap_constraint_at(code, m, cap_threshold(m, s))
}

/// `s_0(C, [-1, -t)) <= m |C|` for an explicit threshold `t`.
pub fn check_cap_constraint_at(code: &SphericalCode, m: usize, t: f64) -> Result<CapReport> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::OutOfRange(t));
    }
    let s0 = s_k_moment(code, Interval::new(-1.0, -t)?, 0);
    let limit = (m * code.len()) as f64;
    Ok(CapReport {
        m,
        t,
        s0,
        limit,
        slack: limit - s0,
        holds: s0 <= limit,
    })
}

/// Whether three unit vectors with pairwise inner products `u, v, t` exist:
/// `1 + 2uvt >= u^2 + v^2 + t^2`.
pub fn check_triangle(u: f64, v: f64, t: f64) -> bool {
    1.0 + 2.0 * u * v * t + 1e-12 >= u * u + v * v + t * t
}

// ---------------------------------------------------------------------------
// Registry

/// Names accepted by [`builtin_spherical_code`]; `simplex` and
/// `cross_polytope` take a dimension argument, e.g. `simplex(4)`.
pub const BUILTIN_SPHERICAL_CODES: &[&str] = &[
    "simplex(n)",
    "cross_polytope(n)",
    "triangle",
    "tetrahedron",
    "octahedron",
    "icosahedron",
    "d4_roots",
    "e8_roots",
    "cell600",
    "leech_min",
];

fn normalize_rows(rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    rows.into_iter()
        .map(|v| {
            let norm = dot(&v, &v).sqrt();
            v.into_iter().map(|x| x / norm).collect()
        })
        .collect()
}

/// Regular simplex: the centred standard basis of `R^{n+1}` written in the
/// Helmert basis of the sum-zero hyperplane.
fn simplex(n: usize) -> Vec<Vec<f64>> {
    let m = n + 1;
    let helmert: Vec<Vec<f64>> = (1..m)
        .map(|k| {
            let scale = ((k * (k + 1)) as f64).sqrt();
            (0..m)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => 1.0 / scale,
                    std::cmp::Ordering::Equal => -(k as f64) / scale,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect();
    let rows = (0..m)
        .map(|i| {
            let v: Vec<f64> = (0..m)
                .map(|j| if i == j { 1.0 } else { 0.0 } - 1.0 / m as f64)
                .collect();
            helmert.iter().map(|h| dot(h, &v)).collect()
        })
        .collect();
    normalize_rows(rows)
}

fn cross_polytope(n: usize) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..n {
        for sign in [1.0, -1.0] {
            let mut v = vec![0.0; n];
            v[i] = sign;
            rows.push(v);
        }
    }
    rows
}

fn icosahedron() -> Vec<Vec<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut rows = Vec::new();
    for a in [1.0, -1.0] {
        for b in [phi, -phi] {
            let base = [0.0, a, b];
            for shift in 0..3 {
                rows.push((0..3).map(|i| base[(i + shift) % 3]).collect());
            }
        }
    }
    normalize_rows(rows)
}

/// `+-e_i +- e_j`, `i < j`.
fn dn_roots(n: usize) -> Vec<Vec<f64>> {
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut v = vec![0.0; n];
                v[i] = a;
                v[j] = b;
                rows.push(v);
            }
        }
    }
    rows
}

fn e8_roots() -> Vec<Vec<f64>> {
    let mut rows = dn_roots(8);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            rows.push(
                (0..8)
                    .map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 })
                    .collect(),
            );
        }
    }
    normalize_rows(rows)
}

fn is_even_permutation(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Unit quaternions of the binary icosahedral group: the 600-cell vertices.
fn cell600() -> Vec<Vec<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut rows = cross_polytope(4);
    for mask in 0u32..16 {
        rows.push(
            (0..4)
                .map(|i| if mask >> i & 1 == 1 { -0.5 } else { 0.5 })
                .collect(),
        );
    }
    let base = [phi / 2.0, 0.5, 0.5 / phi, 0.0];
    for perm in permutations(4)
        .into_iter()
        .filter(|p| is_even_permutation(p))
    {
        for mask in 0u32..8 {
            let signed: Vec<f64> = (0..3)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        -base[i]
                    } else {
                        base[i]
                    }
                })
                .chain([0.0])
                .collect();
            rows.push((0..4).map(|i| signed[perm[i]]).collect());
        }
    }
    rows
}

/// Minimal vectors of the Leech lattice scaled by `sqrt 8`, as integer
/// vectors of squared norm 32.
fn leech_integer_vectors() -> Vec<[i8; 24]> {
    let golay = golay24_words();
    let mut out = Vec::with_capacity(196_560);
    for &w in &golay {
        if w.count_ones() == 8 {
            let support: Vec<usize> = (0..24).filter(|&i| w >> i & 1 == 1).collect();
            for mask in 0u32..256 {
                if mask.count_ones() % 2 == 0 {
                    let mut v = [0i8; 24];
                    for (k, &i) in support.iter().enumerate() {
                        v[i] = if mask >> k & 1 == 1 { -2 } else { 2 };
                    }
                    out.push(v);
                }
            }
        }
    }
    for &w in &golay {
        for i in 0..24 {
            let mut v = [1i8; 24];
            v[i] = -3;
            for (k, x) in v.iter_mut().enumerate() {
                if w >> k & 1 == 1 {
                    *x = -*x;
                }
            }
            out.push(v);
        }
    }
    for i in 0..24 {
        for j in i + 1..24 {
            for (a, b) in [(4, 4), (4, -4), (-4, 4), (-4, -4)] {
                let mut v = [0i8; 24];
                v[i] = a;
                v[j] = b;
                out.push(v);
            }
        }
    }
    out
}

/// A signed coordinate permutation `v -> w` with `w[perm[i]] = sign[i] v[i]`.
struct SignedPerm {
    perm: [usize; 24],
    sign: [i8; 24],
}

impl SignedPerm {
    fn apply(&self, v: &[i8; 24]) -> [i8; 24] {
        let mut w = [0i8; 24];
        for i in 0..24 {
            w[self.perm[i]] = self.sign[i] * v[i];
        }
        w
    }

    fn apply_word(&self, w: u32) -> u32 {
        (0..24)
            .filter(|&i| w >> i & 1 == 1)
            .fold(0, |acc, i| acc | 1 << self.perm[i])
    }
}

/// Coordinates are `0..23` for the cyclic positions mod 23 and `23` for the
/// point at infinity.
fn golay_symmetries() -> Vec<SignedPerm> {
    let inf = 23usize;
    let map = |f: &dyn Fn(usize) -> usize| -> [usize; 24] {
        let mut p = [0usize; 24];
        for (i, slot) in p.iter_mut().enumerate() {
            *slot = f(i);
        }
        p
    };
    let inv23 = |x: usize| (1..23).find(|y| x * y % 23 == 1).expect("23 is prime");
    let perms = [
        map(&|i| if i == inf { inf } else { (i + 1) % 23 }),
        map(&|i| if i == inf { inf } else { 2 * i % 23 }),
        map(&|i| match i {
            _ if i == inf => 0,
            0 => inf,
            _ => (23 - inv23(i)) % 23,
        }),
    ];
    let mut out: Vec<SignedPerm> = perms
        .into_iter()
        .map(|perm| SignedPerm {
            perm,
            sign: [1; 24],
        })
        .collect();
    let identity = map(&|i| i);
    for row in crate::constructions::GOLAY24_GENERATOR {
        let mut sign = [1i8; 24];
        for (i, s) in sign.iter_mut().enumerate() {
            if row >> i & 1 == 1 {
                *s = -1;
            }
        }
        out.push(SignedPerm {
            perm: identity,
            sign,
        });
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Leech minimal vectors with `s(C)` certified by symmetry: each generator
/// is checked to preserve both the Golay code and the vector set, so the
/// group they generate preserves inner products on the set, and the maximum
/// over all pairs equals the maximum over pairs `(r, y)` with `r` running
/// through one representative per orbit.
fn leech_min() -> Result<SphericalCode> {
    let vectors = leech_integer_vectors();
    let golay: HashSet<u32> = golay24_words().into_iter().collect();
    let index: HashMap<[i8; 24], usize> =
        vectors.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    if index.len() != 196_560 {
        return Err(Error::Degenerate("Leech vector set has duplicates".into()));
    }
    let mut parent: Vec<usize> = (0..vectors.len()).collect();
    for g in golay_symmetries() {
        if golay.iter().any(|&w| !golay.contains(&g.apply_word(w))) {
            return Err(Error::Degenerate(
                "symmetry does not fix the Golay code".into(),
            ));
        }
        for (i, v) in vectors.iter().enumerate() {
            let j = *index
                .get(&g.apply(v))
                .ok_or_else(|| Error::Degenerate("symmetry does not fix the vector set".into()))?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbit_size = vec![0usize; vectors.len()];
    for i in 0..vectors.len() {
        orbit_size[find(&mut parent, i)] += 1;
    }
    let reps: Vec<usize> = (0..vectors.len()).filter(|&i| orbit_size[i] > 0).collect();
    let mut best = i32::MIN;
    for &r in &reps {
        let x = &vectors[r];
        for (j, y) in vectors.iter().enumerate() {
            if j != r {
                let ip: i32 = x.iter().zip(y).map(|(&a, &b)| a as i32 * b as i32).sum();
                best = best.max(ip);
            }
        }
    }
    let scale = 32f64.sqrt();
    let rows = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as f64 / scale).collect())
        .collect();
    let mut code = SphericalCode::new(24, rows)?;
    code.certified_max = Some(best as f64 / 32.0);
    code.orbits = Some(reps.iter().map(|&r| (r, orbit_size[r])).collect());
    Ok(code)
}

fn parse_call(name: &str) -> Option<(&str, usize)> {
    let (head, rest) = name.split_once('(')?;
    let arg = rest.strip_suffix(')')?.trim().parse().ok()?;
    Some((head.trim(), arg))
}

/// Returns a named configuration after checking its size and `s(C)`
/// against the registry metadata.
pub fn builtin_spherical_code(name: &str) -> Result<SphericalCode> {
    let name = name.trim();
    let (rows, n, size, s): (Vec<Vec<f64>>, usize, usize, f64) = match parse_call(name) {
        Some(("simplex", n)) if n >= 1 => (simplex(n), n, n + 1, -1.0 / n as f64),
        Some(("cross_polytope", n)) if n >= 2 => (cross_polytope(n), n, 2 * n, 0.0),
        Some(_) => return Err(Error::UnknownCode(name.to_string())),
        None => match name {
            "triangle" => (simplex(2), 2, 3, -0.5),
            "tetrahedron" => (simplex(3), 3, 4, -1.0 / 3.0),
            "octahedron" => (cross_polytope(3), 3, 6, 0.0),
            "icosahedron" => (icosahedron(), 3, 12, 1.0 / 5f64.sqrt()),
            "d4_roots" => (normalize_rows(dn_roots(4)), 4, 24, 0.5),
            "e8_roots" => (e8_roots(), 8, 240, 0.5),
            "cell600" => (cell600(), 4, 120, (std::f64::consts::PI / 5.0).cos()),
            "leech_min" => {
                let code = leech_min()?;
                return self_check(name, code, 196_560, 0.5);
            }
            _ => return Err(Error::UnknownCode(name.to_string())),
        },
    };
    self_check(name, SphericalCode::new(n, rows)?, size, s)
}

/// `A(n, s(C)) >= |C|` as a report, `s(C)` being the largest inner product.
pub fn explicit_code_report(code: &SphericalCode, source: &str) -> Result<BoundReport> {
    let s = max_inner_product(code)?;
    Ok(BoundReport::cardinality(
        code.dim(),
        s,
        Method::Construction,
        code.len() as f64,
        true,
        Certificate::ExplicitCode {
            source: source.to_string(),
            size: code.len(),
            max_inner_product: s,
        },
    ))
}

fn self_check(name: &str, code: SphericalCode, size: usize, s: f64) -> Result<SphericalCode> {
    let got = max_inner_product(&code)?;
    if code.len() != size || (got - s).abs() > 1e-12 {
        return Err(Error::Degenerate(format!(
            "{name}: expected ({size}, {s}), built ({}, {got})",
            code.len()
        )));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn registry_self_checks_pass() {
        for name in [
            "simplex(5)",
            "cross_polytope(4)",
            "triangle",
            "tetrahedron",
            "octahedron",
            "icosahedron",
            "d4_roots",
            "e8_roots",
            "cell600",
        ] {
            builtin_spherical_code(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(matches!(
            builtin_spherical_code("dodecahedron"),
            Err(Error::UnknownCode(_))
        ));
    }

    #[test]
    fn simplex_inner_product() {
        let c = builtin_spherical_code("simplex(7)").unwrap();
        assert!(close(max_inner_product(&c).unwrap(), -1.0 / 7.0, 1e-14));
    }

    #[test]
    fn cross_polytope_distribution() {
        let c = builtin_spherical_code("cross_polytope(5)").unwrap();
        let d = two_point_distribution(&c).unwrap();
        let find = |t: f64| {
            d.buckets
                .iter()
                .find(|(x, _)| close(*x, t, 1e-9))
                .map(|b| b.1)
        };
        assert_eq!(find(0.0), Some(8.0));
        assert_eq!(find(-1.0), Some(1.0));
        assert_eq!(find(1.0), Some(1.0));
    }

    #[test]
    fn icosahedron_antipodes() {
        let c = builtin_spherical_code("icosahedron").unwrap();
        let s0 = s_k_moment(&c, Interval::new(-1.0, -0.9).unwrap(), 0);
        assert_eq!(s0, 12.0);
        let cap = check_cap_constraint(&c, 1, 0.5).unwrap();
        assert!(close(cap.t, 3f64.sqrt() / 2.0, 1e-15));
        assert_eq!((cap.s0, cap.limit), (12.0, 12.0));
    }

    #[test]
    fn pfender_on_antipodal_pair() {
        let c = SphericalCode::new(1, vec![vec![1.0], vec![-1.0]]).unwrap();
        let r = check_pfender(&c, 0.1).unwrap();
        assert_eq!(r.s2, 2.0);
        assert!(close(r.rhs, 0.1 * 2.0 + 2.0 * 0.9, 1e-12));
        assert!(r.holds);
    }

    #[test]
    fn pfender_requires_code_below_s() {
        let c = builtin_spherical_code("e8_roots").unwrap();
        assert!(matches!(
            check_pfender(&c, 0.4),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn triangle_condition() {
        assert!(check_triangle(1.0, 1.0, 1.0));
        assert!(!check_triangle(1.0, -1.0, 1.0));
        assert!(check_triangle(0.5, 0.5, 0.5));
    }

    #[test]
    fn rank_deficient_code_is_rejected() {
        let r = SphericalCode::new(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn points_file_renormalizes_near_unit() {
        let c = parse_points("1.0000001 0\n0 1\n# comment\n\n-1 0\n").unwrap();
        assert_eq!(c.len(), 3);
        assert!(close(c.vector(0)[0], 1.0, 1e-15));
        assert!(parse_points("2 0\n0 1\n").is_err());
        assert!(parse_points("1 0\n0 x\n").is_err());
    }

    #[test]
    fn leech_distribution_from_orbits() {
        let c = builtin_spherical_code("leech_min").unwrap();
        let d = two_point_distribution(&c).unwrap();
        let expected = [
            (-1.0, 1.0),
            (-0.5, 4600.0),
            (-0.25, 47104.0),
            (0.0, 93150.0),
            (0.25, 47104.0),
            (0.5, 4600.0),
            (1.0, 1.0),
        ];
        assert_eq!(d.buckets.len(), expected.len());
        for ((t, a), (et, ea)) in d.buckets.iter().zip(expected) {
            assert!(close(*t, et, 1e-12) && close(*a, ea, 1e-9), "{t} {a}");
        }
    }
}
