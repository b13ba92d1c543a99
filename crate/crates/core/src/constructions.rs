//! Lower bounds on kissing numbers from binary codes via Constructions A
//! and B.
//!
//! Construction A packs spheres of radius `min(2, sqrt d) / 2` at the integer
//! points congruent mod 2 to a codeword; Construction B additionally requires
//! the coordinate sum to be divisible by 4. Touching counts around a centre
//! `x` follow from the weight profile `A_i(x)`.

use serde::{Deserialize, Serialize};

use crate::analysis::SphericalCode;
use crate::error::{Error, Result};
use crate::report::{BoundReport, Certificate, Method};

/// Words are bit vectors: coordinate `i` is bit `i`.
pub type Word = u64;

const MAX_LENGTH: usize = 64;
const MAX_CONTACT_LENGTH: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryCode {
    n: usize,
    words: Vec<Word>,
    linear: bool,
}

fn mask(n: usize) -> Word {
    if n == 64 {
        Word::MAX
    } else {
        (1 << n) - 1
    }
}

fn gf2_rank(words: &[Word]) -> usize {
    let mut basis: Vec<Word> = Vec::new();
    for &w in words {
        let reduced = basis.iter().fold(w, |acc, &b| acc.min(acc ^ b));
        if reduced != 0 {
            basis.push(reduced);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// All `2^k` sums of the given rows.
pub fn span(rows: &[Word]) -> Vec<Word> {
    let mut words = vec![0];
    for &r in rows {
        let extra: Vec<Word> = words.iter().map(|w| w ^ r).collect();
        words.extend(extra);
    }
    words.sort_unstable();
    words.dedup();
    words
}

impl BinaryCode {
    /// Builds a code of length `n`; duplicate words are merged.
    pub fn new(n: usize, mut words: Vec<Word>) -> Result<Self> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::TooLarge(format!("code length {n} outside 1..=64")));
        }
        if words.is_empty() {
            return Err(Error::PreconditionViolated("empty code".into()));
        }
        if words.iter().any(|w| w & !mask(n) != 0) {
            return Err(Error::InconsistentLengths);
        }
        words.sort_unstable();
        words.dedup();
        // A set containing 0 and of size 2^rank equals its own span.
        let linear = words[0] == 0
            && words.len().is_power_of_two()
            && gf2_rank(&words) == words.len().trailing_zeros() as usize;
        Ok(Self { n, words, linear })
    }

    /// Parses one codeword per line as a string of `0`/`1` characters.
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut words = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if *n.get_or_insert(line.len()) != line.len() {
                return Err(Error::InconsistentLengths);
            }
            let mut w: Word = 0;
            for (i, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' if i < MAX_LENGTH => w |= 1 << i,
                    '1' => {}
                    _ => {
                        return Err(Error::Parse(format!(
                            "line {}: unexpected character {c:?}",
                            lineno + 1
                        )))
                    }
                }
            }
            words.push(w);
        }
        let n = n.ok_or_else(|| Error::Parse("no codewords".into()))?;
        Self::new(n, words)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn all_even(&self) -> bool {
        self.words.iter().all(|w| w.count_ones().is_multiple_of(2))
    }

    /// Minimum Hamming distance; `None` for a single word.
    pub fn min_distance(&self) -> Option<usize> {
        if self.words.len() < 2 {
            return None;
        }
        let d = if self.linear {
            self.words[1..].iter().map(|w| w.count_ones()).min()
        } else {
            (0..self.words.len())
                .flat_map(|i| (i + 1..self.words.len()).map(move |j| (i, j)))
                .map(|(i, j)| (self.words[i] ^ self.words[j]).count_ones())
                .min()
        };
        d.map(|d| d as usize)
    }

    /// `A_i(x)` for `i = 0..=n`.
    pub fn weight_profile(&self, center: Word) -> WeightProfile {
        let mut counts = vec![0usize; self.n + 1];
        for w in &self.words {
            counts[(w ^ center).count_ones() as usize] += 1;
        }
        WeightProfile { center, counts }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| {
                (0..self.n)
                    .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub center: Word,
    pub counts: Vec<usize>,
}

impl WeightProfile {
    pub fn at(&self, i: usize) -> usize {
        self.counts.get(i).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub m: usize,
    /// Minimum distance, `None` for a one-word code.
    pub d: Option<usize>,
    pub profile: WeightProfile,
}

/// `(n, M, d)` and the weight profile around `center` (the first codeword
/// when not given).
pub fn code_params(code: &BinaryCode, center: Option<Word>) -> CodeParams {
    let center = center.unwrap_or(code.words[0]);
    CodeParams {
        n: code.n,
        m: code.size(),
        d: code.min_distance(),
        profile: code.weight_profile(center),
    }
}

/// Touching count of Construction A around centre `x`:
/// `2^d A_d(x)` for `d < 4`, `2n + 16 A_4(x)` for `d = 4`, `2n` for `d > 4`.
pub fn construction_a_count(code: &BinaryCode, center: Word) -> u64 {
    let n = code.n as u64;
    match code.min_distance() {
        Some(d) if d < 4 => (1u64 << d) * code.weight_profile(center).at(d) as u64,
        Some(4) => 2 * n + 16 * code.weight_profile(center).at(4) as u64,
        _ => 2 * n,
    }
}

/// Touching count of Construction B around centre `x`:
/// `2^{d-1} A_d(x)` for `d < 8`, `2n(n-1) + 128 A_8(x)` for `d = 8`,
/// `2n(n-1)` for `d > 8`.
pub fn construction_b_count(code: &BinaryCode, center: Word) -> Result<u64> {
    if let Some(w) = code.words.iter().find(|w| w.count_ones() % 2 == 1) {
        let word = (0..code.n)
            .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
            .collect();
        return Err(Error::OddWeightCodeword(word));
    }
    let n = code.n as u64;
    Ok(match code.min_distance() {
        Some(d) if d < 8 => (1u64 << (d - 1)) * code.weight_profile(center).at(d) as u64,
        Some(8) => 2 * n * (n - 1) + 128 * code.weight_profile(center).at(8) as u64,
        _ => 2 * n * (n - 1),
    })
}

/// Centres worth trying: the zero word for linear codes (every codeword sees
/// the same profile), every codeword otherwise.
fn centers(code: &BinaryCode) -> Vec<Word> {
    if code.linear {
        vec![0]
    } else {
        code.words.clone()
    }
}

/// Best Construction A touching count over codeword centres.
pub fn construction_a_kissing(code: &BinaryCode) -> u64 {
    centers(code)
        .into_iter()
        .map(|c| construction_a_count(code, c))
        .max()
        .unwrap_or(0)
}

/// Best Construction B touching count over codeword centres.
pub fn construction_b_kissing(code: &BinaryCode) -> Result<u64> {
    let mut best = 0;
    for c in centers(code) {
        best = best.max(construction_b_count(code, c)?);
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    A,
    B,
}

impl ConstructionKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ConstructionKind::A => "a",
            ConstructionKind::B => "b",
        }
    }
}

/// Kissing-number lower bound `tau_n >= count` from a construction, as a
/// report at `s = 1/2`.
pub fn construction_report(
    code: &BinaryCode,
    kind: ConstructionKind,
    source: &str,
) -> Result<BoundReport> {
    let count = match kind {
        ConstructionKind::A => construction_a_kissing(code),
        ConstructionKind::B => construction_b_kissing(code)?,
    };
    Ok(BoundReport::cardinality(
        code.n,
        0.5,
        Method::Construction,
        count as f64,
        true,
        Certificate::Construction {
            source: source.to_string(),
            construction: kind.tag().to_string(),
            code_length: code.n,
            code_size: code.size(),
            min_distance: code.min_distance().unwrap_or(0),
        },
    ))
}

fn best_center(code: &BinaryCode, count: impl Fn(Word) -> Result<u64>) -> Result<Word> {
    let mut best = (0u64, code.words[0]);
    for c in centers(code) {
        let k = count(c)?;
        if k > best.0 {
            best = (k, c);
        }
    }
    Ok(best.1)
}

fn contact_setup(code: &BinaryCode) -> Result<()> {
    if code.n > MAX_CONTACT_LENGTH {
        return Err(Error::TooLarge(format!(
            "contact enumeration needs n <= {MAX_CONTACT_LENGTH}, got {}",
            code.n
        )));
    }
    Ok(())
}

/// Sign patterns on the support of `diff`, keeping those `keep` accepts.
fn signed_supports(n: usize, diff: Word, keep: impl Fn(i32) -> bool, out: &mut Vec<Vec<i32>>) {
    let support: Vec<usize> = (0..n).filter(|&i| diff >> i & 1 == 1).collect();
    for signs in 0u32..(1 << support.len()) {
        let mut v = vec![0i32; n];
        for (k, &i) in support.iter().enumerate() {
            v[i] = if signs >> k & 1 == 1 { -1 } else { 1 };
        }
        if keep(v.iter().sum()) {
            out.push(v);
        }
    }
}

/// `+-2 e_i` (A) or `+-2 e_i +- 2 e_j` (B).
fn even_moves(n: usize, pairs: bool, out: &mut Vec<Vec<i32>>) {
    for i in 0..n {
        if pairs {
            for j in i + 1..n {
                for (a, b) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                    let mut v = vec![0; n];
                    v[i] = a;
                    v[j] = b;
                    out.push(v);
                }
            }
        } else {
            for a in [2, -2] {
                let mut v = vec![0; n];
                v[i] = a;
                out.push(v);
            }
        }
    }
}

fn to_spherical(n: usize, vectors: Vec<Vec<i32>>) -> Result<SphericalCode> {
    let rows = vectors
        .into_iter()
        .map(|v| {
            let norm = (v.iter().map(|x| (x * x) as f64).sum::<f64>()).sqrt();
            v.into_iter().map(|x| x as f64 / norm).collect()
        })
        .collect();
    SphericalCode::new(n, rows)
}

/// Integer differences from the best centre to its touching neighbours in
/// the Construction A packing, sorted. A neighbour
/// `c + 2z` differs from the centre `x` by a vector that is odd exactly on
/// the support of `c xor x`, so minimal ones are `+-1` there and `0`
/// elsewhere, or `+-2 e_i` when `c = x`.
pub fn construction_a_contacts(code: &BinaryCode) -> Result<Vec<Vec<i32>>> {
    contact_setup(code)?;
    let center = best_center(code, |c| Ok(construction_a_count(code, c)))?;
    let d = code.min_distance().unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if d <= 4 {
        for &w in &code.words {
            if (w ^ center).count_ones() as usize == d {
                signed_supports(code.n, w ^ center, |_| true, &mut out);
            }
        }
    }
    if d >= 4 {
        even_moves(code.n, false, &mut out);
    }
    out.sort();
    Ok(out)
}

/// [`construction_a_contacts`] normalised onto the unit sphere. Fails with
/// `Degenerate` when the contacts lie in a proper subspace.
pub fn construction_a_contact_vectors(code: &BinaryCode) -> Result<SphericalCode> {
    to_spherical(code.n, construction_a_contacts(code)?)
}

/// Construction B analogue of [`construction_a_contacts`]: odd parts need
/// coordinate sum `= 0 mod 4`, and the even moves are `+-2 e_i +- 2 e_j`.
pub fn construction_b_contacts(code: &BinaryCode) -> Result<Vec<Vec<i32>>> {
    contact_setup(code)?;
    construction_b_kissing(code)?;
    let center = best_center(code, |c| construction_b_count(code, c))?;
    let d = code.min_distance().unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if d <= 8 {
        for &w in &code.words {
            if (w ^ center).count_ones() as usize == d {
                signed_supports(code.n, w ^ center, |sum| sum.rem_euclid(4) == 0, &mut out);
            }
        }
    }
    if d >= 8 {
        even_moves(code.n, true, &mut out);
    }
    out.sort();
    Ok(out)
}

pub fn construction_b_contact_vectors(code: &BinaryCode) -> Result<SphericalCode> {
    to_spherical(code.n, construction_b_contacts(code)?)
}

/// Rows of a generator matrix of the extended binary Golay code: the cyclic
/// shifts of `g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11` on
/// coordinates `0..23` with an overall parity bit at coordinate 23.
pub const GOLAY24_GENERATOR: [u32; 12] = [
    0x800c75, 0x8018ea, 0x8031d4, 0x8063a8, 0x80c750, 0x818ea0, 0x831d40, 0x863a80, 0x8c7500,
    0x98ea00, 0xb1d400, 0xe3a800,
];

/// The 4096 words of the extended Golay code, sorted.
pub fn golay24_words() -> Vec<u32> {
    let rows: Vec<Word> = GOLAY24_GENERATOR.iter().map(|&r| r as Word).collect();
    span(&rows).into_iter().map(|w| w as u32).collect()
}

fn golay24() -> Result<BinaryCode> {
    let code = BinaryCode::new(24, golay24_words().into_iter().map(Word::from).collect())?;
    let profile = code.weight_profile(0);
    if code.size() != 4096 || code.min_distance() != Some(8) || profile.at(8) != 759 {
        return Err(Error::Degenerate(format!(
            "golay24 self-check failed: M = {}, d = {:?}, A_8 = {}",
            code.size(),
            code.min_distance(),
            profile.at(8)
        )));
    }
    Ok(code)
}

fn hamming7_rows() -> Vec<Word> {
    // g(x) = 1 + x + x^3
    (0..4).map(|i| 0b1011 << i).collect()
}

fn with_parity(w: Word, n: usize) -> Word {
    w | Word::from(w.count_ones() % 2 == 1) << n
}

/// Names accepted by [`builtin_code`].
pub const BUILTIN_CODES: &[&str] = &[
    "repetition(n)",
    "even_weight(n)",
    "hamming7",
    "ext_hamming8",
    "golay24",
];

pub fn builtin_code(name: &str) -> Result<BinaryCode> {
    let name = name.trim();
    let unknown = || Error::UnknownCode(name.to_string());
    if let Some((head, rest)) = name.split_once('(') {
        let n: usize = rest
            .strip_suffix(')')
            .and_then(|a| a.trim().parse().ok())
            .ok_or_else(unknown)?;
        return match head.trim() {
            "repetition" if (1..=MAX_LENGTH).contains(&n) => BinaryCode::new(n, vec![0, mask(n)]),
            "even_weight" if (1..=20).contains(&n) => BinaryCode::new(
                n,
                (0..1 << n)
                    .filter(|w: &Word| w.count_ones().is_multiple_of(2))
                    .collect(),
            ),
            "even_weight" => Err(Error::TooLarge(format!(
                "even_weight({n}) has 2^{} words",
                n - 1
            ))),
            _ => Err(unknown()),
        };
    }
    match name {
        "hamming7" => BinaryCode::new(7, span(&hamming7_rows())),
        "ext_hamming8" => BinaryCode::new(
            8,
            span(&hamming7_rows())
                .into_iter()
                .map(|w| with_parity(w, 7))
                .collect(),
        ),
        "golay24" => golay24(),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::max_inner_product;

    #[test]
    fn even_weight_3() {
        let c = builtin_code("even_weight(3)").unwrap();
        let p = code_params(&c, Some(0));
        assert_eq!((p.n, p.m, p.d), (3, 4, Some(2)));
        assert_eq!(p.profile.at(2), 3);
        assert_eq!(construction_a_kissing(&c), 12);
        let contacts = construction_a_contact_vectors(&c).unwrap();
        assert_eq!(contacts.len(), 12);
        assert!((max_inner_product(&contacts).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hamming_codes() {
        let h = builtin_code("hamming7").unwrap();
        assert_eq!((h.size(), h.min_distance()), (16, Some(3)));
        let e = builtin_code("ext_hamming8").unwrap();
        assert!(e.is_linear());
        assert_eq!(e.weight_profile(0).counts, vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
        assert_eq!(construction_a_kissing(&e), 240);
    }

    #[test]
    fn golay_construction_b() {
        let g = builtin_code("golay24").unwrap();
        assert_eq!(construction_b_kissing(&g).unwrap(), 98256);
        assert_eq!(construction_b_kissing(&g).unwrap(), 2 * 24 * 23 + 128 * 759);
        assert!(matches!(
            construction_a_contact_vectors(&g),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn odd_words_block_construction_b() {
        let h = builtin_code("hamming7").unwrap();
        assert!(matches!(
            construction_b_kissing(&h),
            Err(Error::OddWeightCodeword(_))
        ));
    }

    #[test]
    fn single_word_gives_integer_lattice() {
        let c = BinaryCode::new(5, vec![0]).unwrap();
        assert_eq!(construction_a_kissing(&c), 10);
        assert_eq!(construction_a_contact_vectors(&c).unwrap().len(), 10);
    }

    #[test]
    fn repetition_4_gives_d4() {
        let c = builtin_code("repetition(4)").unwrap();
        assert_eq!(construction_a_kissing(&c), 24);
        let v = construction_a_contact_vectors(&c).unwrap();
        assert_eq!(v.len(), 24);
        assert!((max_inner_product(&v).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn parse_code_file() {
        let c = BinaryCode::parse("000\n011\n# comment\n101\n110\n").unwrap();
        assert_eq!(c.size(), 4);
        assert!(c.is_linear());
        assert_eq!(c.to_strings()[1], "110");
        assert_eq!(
            BinaryCode::parse("00\n011\n"),
            Err(Error::InconsistentLengths)
        );
        assert!(matches!(BinaryCode::parse("0a1\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn nonlinear_code_uses_best_center() {
        // every centre sees two words at distance 2
        let c = BinaryCode::parse("000\n110\n101\n").unwrap();
        assert!(!c.is_linear());
        assert_eq!(construction_a_kissing(&c), 8);
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(
            builtin_code("hadamard"),
            Err(Error::UnknownCode(_))
        ));
        assert!(matches!(
            builtin_code("repetition(x)"),
            Err(Error::UnknownCode(_))
        ));
    }
}
