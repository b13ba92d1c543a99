use std::collections::HashSet;

use kissing::analysis::{
    builtin_spherical_code, max_inner_product, s_k_moment, two_point_distribution, Interval,
};
use kissing::constructions::{
    builtin_code, construction_a_contacts, construction_a_kissing, BinaryCode, Word,
};
use kissing::geometric::{coxeter_boroczky_bound, schlafli_f, SchlafliContext};
use kissing::levenshtein::{
    interval_index, levenshtein_bound, levenshtein_closed_form, levenshtein_polynomial,
};
use kissing::lp::{lp_search, verify_theorem1};
use kissing::musin::{h2_closed_form, musin_bound, MusinConfig};
use kissing::polynomials::{adjacent_greatest_zero, gegenbauer, gegenbauer_expand};
use kissing::report::{Certificate, Method};
use kissing::tables::{known_row, reconcile};
use kissing::{Error, Polynomial};
use proptest::prelude::*;

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_degree + 1)
}

/// Expansion of `t p` from the expansion of `p`, using
/// `t P_k = ((k + n - 2) P_{k+1} + k P_{k-1}) / (2k + n - 2)`.
fn times_t(n: usize, f: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; f.len() + 1];
    let nf = n as f64;
    for (k, &c) in f.iter().enumerate() {
        let kf = k as f64;
        let den = 2.0 * kf + nf - 2.0;
        out[k + 1] += c * (kf + nf - 2.0) / den;
        if k > 0 {
            out[k - 1] += c * kf / den;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recurrence_residual(n in 3usize..=24, k in 1usize..=15, t in -1.0f64..=1.0) {
        let (p0, p1, p2) = (gegenbauer(n, k - 1).unwrap(), gegenbauer(n, k).unwrap(), gegenbauer(n, k + 1).unwrap());
        let (kf, nf) = (k as f64, n as f64);
        let r = (kf + nf - 2.0) * p2.eval(t) - (2.0 * kf + nf - 2.0) * t * p1.eval(t) + kf * p0.eval(t);
        prop_assert!(r.abs() < 1e-10, "residual {r}");
    }

    #[test]
    fn expansion_matches_multiply_by_t(n in 3usize..=24, coeffs in poly_strategy(14)) {
        let p = Polynomial::new(coeffs.clone());
        let e = gegenbauer_expand(n, &p).unwrap();
        let mut shifted = vec![0.0];
        shifted.extend_from_slice(&coeffs);
        let direct = gegenbauer_expand(n, &Polynomial::new(shifted)).unwrap();
        let oracle = times_t(n, &e.coeffs);
        let scale = oracle.iter().map(|c| c.abs()).fold(1.0, f64::max);
        for (i, c) in direct.coeffs.iter().enumerate() {
            let o = oracle.get(i).copied().unwrap_or(0.0);
            prop_assert!((c - o).abs() <= 1e-12 * scale, "k = {i}: {c} vs {o}");
        }
    }

    #[test]
    fn expansion_round_trip(n in 3usize..=24, coeffs in poly_strategy(15)) {
        let p = Polynomial::new(coeffs);
        let back = gegenbauer_expand(n, &p).unwrap().to_polynomial();
        let scale = p.coeffs().iter().map(|c| c.abs()).fold(1.0, f64::max);
        for i in 0..=40 {
            let t = -1.0 + i as f64 / 20.0;
            prop_assert!((back.eval(t) - p.eval(t)).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn orthogonality_proxy(n in 3usize..=24, j in 0usize..=7, k in 0usize..=7) {
        prop_assume!(j != k);
        let prod = &gegenbauer(n, j).unwrap() * &gegenbauer(n, k).unwrap();
        let f0 = gegenbauer_expand(n, &prod).unwrap().f0();
        prop_assert!(f0.abs() < 1e-10, "f0 = {f0}");
    }

    #[test]
    fn interlacing(n in 3usize..=24, k in 2usize..=6) {
        let a = adjacent_greatest_zero(n, 1, 1, k - 1).unwrap();
        let b = adjacent_greatest_zero(n, 1, 0, k).unwrap();
        let c = adjacent_greatest_zero(n, 1, 1, k).unwrap();
        prop_assert!(a < b && b < c, "{a} {b} {c}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn levenshtein_monotone(n in 3usize..=24, s in 0.0f64..0.7, ds in 1e-4f64..0.05) {
        let a = levenshtein_bound(n, s).unwrap().value;
        let b = levenshtein_bound(n, (s + ds).min(0.75)).unwrap().value;
        prop_assert!(b >= a * (1.0 - 1e-9), "L({n}, {s}) = {a} > L at s + ds = {b}");
    }

    #[test]
    fn levenshtein_polynomial_reproduces_closed_form(n in 3usize..=24, s in 0.0f64..0.7) {
        let idx = interval_index(n, s).unwrap();
        prop_assume!(s > idx.lo + 1e-6 && s < idx.hi - 1e-6);
        let f = levenshtein_polynomial(n, s).unwrap();
        let r = verify_theorem1(n, s, &f).unwrap();
        let closed = levenshtein_closed_form(n, idx.m, s);
        prop_assert!(((r.value - closed) / closed).abs() < 1e-6);
        let e = gegenbauer_expand(n, &f).unwrap();
        prop_assert!(e.coeffs.iter().all(|&c| c > -1e-12));
    }

    #[test]
    fn lp_dominated_by_levenshtein(n in 3usize..=6, s in 0.1f64..0.6) {
        let lev = levenshtein_bound(n, s).unwrap().value;
        if let Ok(r) = lp_search(n, s, 9, 2000) {
            prop_assert!(r.value <= lev + 1e-6, "lp {} vs L {lev}", r.value);
            let Certificate::Polynomial(c) = &r.certificate else { panic!("certificate kind") };
            let replay = verify_theorem1(n, s, &Polynomial::new(c.monomial_coeffs.clone())).unwrap();
            prop_assert!((replay.value - r.value).abs() <= 1e-9 * r.value);
        }
    }

    #[test]
    fn schlafli_nondecreasing(n in 2usize..=6, a in 0.05f64..0.5, da in 0.001f64..0.2) {
        // F_n is defined for alpha in [arcsec(n-1)/2, pi/4]... stay inside.
        let lo = ((1.0 / (n as f64 - 1.0).max(1.0)).acos() / 2.0).max(0.0);
        let x = lo + a;
        let y = (x + da).min(std::f64::consts::FRAC_PI_4);
        prop_assume!(x < std::f64::consts::FRAC_PI_4);
        let fx = schlafli_f(n, x, 1e-8).unwrap();
        let fy = schlafli_f(n, y, 1e-8).unwrap();
        prop_assert!(fy >= fx - 1e-7, "F_{n}({x}) = {fx} > F_{n}({y}) = {fy}");
    }
}

#[test]
fn levenshtein_continuity_at_endpoints() {
    for n in 3..=24 {
        for k in 1..=5 {
            let b = adjacent_greatest_zero(n, 1, 1, k).unwrap();
            let c = adjacent_greatest_zero(n, 1, 0, k + 1).unwrap();
            let left = levenshtein_closed_form(n, 2 * k, b);
            let right = levenshtein_closed_form(n, 2 * k + 1, b);
            assert!(
                ((left - right) / left).abs() < 1e-6,
                "n = {n}, s = t_{k}^11"
            );
            let left = levenshtein_closed_form(n, 2 * k + 1, c);
            let right = levenshtein_closed_form(n, 2 * k + 2, c);
            assert!(
                ((left - right) / left).abs() < 1e-6,
                "n = {n}, s = t_{}^10",
                k + 1
            );
        }
    }
}

#[test]
fn lp_grid_refinement() {
    for n in 3..=5 {
        let coarse = lp_search(n, 0.5, 9, 2000).unwrap().value;
        let fine = lp_search(n, 0.5, 9, 4000).unwrap().value;
        assert!(fine <= coarse + 1e-6, "n = {n}: {coarse} -> {fine}");
    }
}

#[test]
fn coxeter_boroczky_orderings() {
    for n in 3..=10 {
        let cb = coxeter_boroczky_bound(n, 0.5, 1e-6).unwrap();
        let lev = levenshtein_bound(n, 0.5).unwrap().value;
        assert!(cb.value >= lev - 1e-3, "n = {n}: CB {} < L {lev}", cb.value);
        let half = coxeter_boroczky_bound(n, 0.5, 5e-7).unwrap();
        let Certificate::Quadrature {
            central,
            error_estimate,
            ..
        } = cb.certificate
        else {
            panic!("certificate kind");
        };
        let Certificate::Quadrature { central: c2, .. } = half.certificate else {
            panic!("certificate kind");
        };
        assert!((central - c2).abs() <= error_estimate.max(1e-12), "n = {n}");
    }
}

#[test]
fn schlafli_context_reuse_matches_fresh() {
    let mut ctx = SchlafliContext::new(1e-8).unwrap();
    for n in [4, 6, 5] {
        let a = ctx.eval(n, 0.75).unwrap().value;
        let b = schlafli_f(n, 0.75, 1e-8).unwrap();
        assert!((a - b).abs() <= 1e-7 * b.abs().max(1.0));
    }
}

#[test]
fn cap_maximum_grows_with_cap() {
    let f = Polynomial::new(vec![-0.2, 0.3, -1.1, 0.4, 2.0, -0.7]);
    let mut last = f64::NEG_INFINITY;
    for i in 0..20 {
        let t0 = -0.99 + 0.0218 * i as f64;
        let config = MusinConfig::new(3, 0.5, t0, 4).unwrap();
        match h2_closed_form(&config, &f) {
            Ok(h) => {
                assert!(h >= last - 1e-12, "t0 = {t0}");
                last = h;
            }
            Err(Error::InfeasibleCap { .. }) => assert_eq!(last, f64::NEG_INFINITY),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn cap_refinement_never_exceeds_delsarte() {
    let f = Polynomial::from_roots(&[-1.0, -0.5, -0.5, 0.0, 0.0, 0.5]);
    let delsarte = verify_theorem1(8, 0.5, &f).unwrap().value;
    let mut checked = 0;
    for i in 0..10 {
        let t0 = -0.98 + 0.02 * i as f64;
        let config = MusinConfig::new(8, 0.5, t0, 1).unwrap();
        if let Ok(r) = musin_bound(&config, &f) {
            assert!(
                r.value <= delsarte + 1e-9,
                "t0 = {t0}: {} > {delsarte}",
                r.value
            );
            assert!(r.rigorous);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

fn brute_force_a(code: &BinaryCode, centre: Word) -> u64 {
    let n = code.length();
    let words: HashSet<Word> = code.words().iter().copied().collect();
    let d = code.min_distance().unwrap_or(usize::MAX).min(4) as i32;
    let mut count = 0;
    let mut v = vec![-2i32; n];
    loop {
        if v.iter().map(|x| x * x).sum::<i32>() == d {
            let parity = (0..n).fold(0, |acc: Word, i| {
                acc | ((((centre >> i) & 1) as i32 + v[i]).rem_euclid(2) as Word) << i
            });
            if words.contains(&parity) {
                count += 1;
            }
        }
        let mut i = 0;
        while i < n && v[i] == 2 {
            v[i] = -2;
            i += 1;
        }
        if i == n {
            return count;
        }
        v[i] += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn construction_a_matches_enumeration(
        n in 2usize..=6,
        raw in prop::collection::btree_set(0u64..64, 2..10),
    ) {
        let words: Vec<Word> = raw.into_iter().map(|w| w & ((1 << n) - 1)).collect::<HashSet<_>>().into_iter().collect();
        prop_assume!(words.len() >= 2);
        let code = BinaryCode::new(n, words).unwrap();
        let best = code.words().iter().map(|&c| brute_force_a(&code, c)).max().unwrap();
        prop_assert_eq!(construction_a_kissing(&code), best);
        prop_assert_eq!(construction_a_contacts(&code).unwrap().len() as u64, best);
    }
}

#[test]
fn linear_codes_look_the_same_from_every_codeword() {
    for name in ["hamming7", "ext_hamming8", "even_weight(6)", "golay24"] {
        let code = builtin_code(name).unwrap();
        assert!(code.is_linear());
        let base = code.weight_profile(0).counts;
        for &c in code.words().iter().step_by(97) {
            assert_eq!(code.weight_profile(c).counts, base, "{name}");
        }
    }
}

#[test]
fn construction_b_rejects_odd_words() {
    let code = builtin_code("hamming7").unwrap();
    assert!(matches!(
        kissing::constructions::construction_b_kissing(&code),
        Err(Error::OddWeightCodeword(_))
    ));
}

const CODES: &[&str] = &[
    "simplex(4)",
    "cross_polytope(5)",
    "tetrahedron",
    "octahedron",
    "icosahedron",
    "d4_roots",
    "e8_roots",
    "cell600",
];

#[test]
fn distribution_counts_ordered_pairs() {
    for name in CODES {
        let c = builtin_spherical_code(name).unwrap();
        let d = two_point_distribution(&c).unwrap();
        let size = c.len() as f64;
        let off: f64 = d
            .buckets
            .iter()
            .filter(|(t, _)| *t < 1.0 - 1e-9)
            .map(|(_, a)| a)
            .sum();
        assert!((size * off - size * (size - 1.0)).abs() < 1e-6, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn s_k_identity(which in 0usize..8, lo in -1.0f64..1.0, width in 0.0f64..2.0, k in 0u32..6) {
        let c = builtin_spherical_code(CODES[which]).unwrap();
        let hi = (lo + width).min(1.0);
        let interval = Interval::new(lo, hi).unwrap();
        let d = two_point_distribution(&c).unwrap();
        // the distribution includes the diagonal at t = 1; s_k does not
        let direct = s_k_moment(&c, interval, k);
        let via = c.len() as f64 * d.buckets.iter()
            .filter(|(t, _)| interval.contains(*t) && *t < 1.0 - 1e-9)
            .map(|(t, a)| a * t.powi(k as i32)).sum::<f64>();
        prop_assert!((direct - via).abs() <= 1e-9 * direct.abs().max(1.0));
    }
}

#[test]
fn rigorous_bounds_respect_the_table() {
    for n in 3..=24 {
        let row = known_row(n).unwrap();
        let mut reports = kissing::cli::default_reports(n).unwrap();
        reports.extend(coxeter_boroczky_bound(n, 0.5, 1e-6).ok());
        if n <= 10 {
            reports.extend(lp_search(n, 0.5, kissing::lp::default_lp_degree(n), 4000).ok());
        }
        let r = reconcile(n, &reports).unwrap();
        for rep in &reports {
            if rep.method == Method::Construction {
                assert!(rep.floor_value.unwrap() <= row.upper);
            } else if rep.rigorous {
                assert!(rep.floor_value.unwrap() >= row.lower, "n = {n}: {rep:?}");
            }
        }
        assert!(r.upper_delta.unwrap() >= 0);
    }
}

#[test]
fn builtin_codes_meet_their_registry_s() {
    for (name, s) in [
        ("e8_roots", 0.5),
        ("d4_roots", 0.5),
        ("cross_polytope(7)", 0.0),
    ] {
        let c = builtin_spherical_code(name).unwrap();
        assert!((max_inner_product(&c).unwrap() - s).abs() < 1e-12);
    }
}
