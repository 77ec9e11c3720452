mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{extracted, fixtures, q, r};
use qtet::exactmath::{QParam, RatFunc, Rational, Scalar};
use qtet::gen::{conjugate, evaluation_module, random_unimodular};
use qtet::io::{emit_module, emit_pair, parse_module, parse_pair, PairData, PairKind};
use qtet::linalg::{algebra_closure_dim, flags_opposite, Decomposition, Matrix, Subspace};
use qtet::modrep::{shape, verify_module};
use qtet::pairs::{check_assignment, extract_qinverting, pairs_isomorphic};
use qtet::split::reconstruct_module;

fn small_matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| Matrix::from_vector(n, n, v.into_iter().map(Rational::from_i64).collect()))
}

/// Decomposition of `Q^n` into groups of columns of `t`, with the given sizes.
fn grouped(t: &Matrix<Rational>, sizes: &[usize]) -> Decomposition<Rational> {
    let n = t.rows();
    let mut start = 0;
    let parts = sizes
        .iter()
        .map(|&k| {
            let cols: Vec<Vec<Rational>> = (start..start + k).map(|c| t.column(c)).collect();
            start += k;
            Subspace::span(n, cols).unwrap()
        })
        .collect();
    Decomposition::new(parts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn opposite_flags_symmetric(seed in any::<u64>(), n in 2usize..=4, other in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t: Matrix<Rational> = random_unimodular(n, &mut rng);
        let sizes = vec![1; n];
        let dec = grouped(&t, &sizes);
        let f = dec.induced_flag();
        let g = dec.inverted().induced_flag();
        let witness = flags_opposite(&f, &g).unwrap();
        prop_assert!(witness.is_some());
        prop_assert!(flags_opposite(&g, &f).unwrap().is_some());
        // an unrelated flag: symmetric either way
        let mut rng2 = ChaCha8Rng::seed_from_u64(other);
        let h = grouped(&random_unimodular(n, &mut rng2), &sizes).induced_flag();
        prop_assert_eq!(
            flags_opposite(&f, &h).unwrap().is_some(),
            flags_opposite(&h, &f).unwrap().is_some()
        );
        prop_assert!(flags_opposite(&f, &f).unwrap().is_none());
    }

    #[test]
    fn closure_invariant_under_conjugation(a in small_matrix(3), b in small_matrix(3), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t: Matrix<Rational> = random_unimodular(3, &mut rng);
        let tinv = t.inverse().unwrap();
        let conj = |m: &Matrix<Rational>| &(&t * m) * &tinv;
        let before = algebra_closure_dim(&[a.clone(), b.clone()]).unwrap();
        let after = algebra_closure_dim(&[conj(&a), conj(&b)]).unwrap();
        prop_assert_eq!(before, after);
        prop_assert!(before <= 9);
    }

    #[test]
    fn pair_files_roundtrip(a in small_matrix(3), b in small_matrix(3), num in 2i64..50, den in 1i64..50) {
        let q = match QParam::new(Rational::new(num.into(), den.into())) {
            Ok(q) => q,
            Err(_) => return Ok(()),
        };
        let scale = Rational::new(1.into(), den.into());
        for kind in [PairKind::Inverting, PairKind::Tridiagonal] {
            let data = PairData { kind, q: q.clone(), first: a.scale(&scale), second: b.clone() };
            prop_assert_eq!(parse_pair(&emit_pair(&data)).unwrap(), data);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn conjugation_preserves_certificate(seed in any::<u64>(), d in 1usize..=3) {
        let m = &fixtures()[d];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t: Matrix<Rational> = random_unimodular(m.dim(), &mut rng);
        let c = conjugate(m, &t).unwrap();
        prop_assert_eq!((c.sign(), c.diameter()), (m.sign(), m.diameter()));
        prop_assert_eq!(shape(&c).unwrap(), shape(m).unwrap());
        // the pipeline works in the new basis too
        let back = reconstruct_module(&extract_qinverting(&c).unwrap()).unwrap();
        prop_assert_eq!(back.generators(), c.generators());
        let (q2, gens) = parse_module(&emit_module(c.generators(), c.q())).unwrap();
        prop_assert_eq!(&gens, c.generators());
        prop_assert_eq!(&q2, c.q());
    }
}

#[test]
fn examples_are_deterministic() {
    for d in 1..=3 {
        assert_eq!(evaluation_module(d, &q()).unwrap(), evaluation_module(d, &q()).unwrap());
    }
}

#[test]
fn pipeline_at_other_q() {
    for text in ["3", "-2", "1/3", "5/2"] {
        let q = QParam::parse(text).unwrap();
        for d in 1..=3 {
            let m = evaluation_module(d, &q).unwrap();
            let back = reconstruct_module(&extract_qinverting(&m).unwrap()).unwrap();
            assert_eq!(back, m, "q={text}, d={d}");
        }
    }
}

#[test]
fn symbolic_pipeline() {
    let q = QParam::<RatFunc>::indeterminate();
    let m = evaluation_module(1, &q).unwrap();
    let back = reconstruct_module(&extract_qinverting(&m).unwrap()).unwrap();
    assert_eq!(back, m);
}

#[test]
fn swapped_assignments_fail() {
    for m in &fixtures()[2..] {
        let p = extracted(m);
        let good = check_assignment(p.v(), p.vstar(), &p.k_inverse(), p.k(), p.kstar(), &p.kstar_inverse());
        assert!(good.passed(), "{good}");
        let swapped = check_assignment(p.v(), p.vstar(), p.k(), &p.k_inverse(), p.kstar(), &p.kstar_inverse());
        assert!(swapped.has_failure("plus-generator") && swapped.has_failure("minus-generator"), "{swapped}");
        let dual = check_assignment(p.v(), p.vstar(), &p.k_inverse(), p.k(), &p.kstar_inverse(), p.kstar());
        assert!(dual.has_failure("dual-plus-generator"), "{dual}");
    }
}

#[test]
fn conjugated_pairs_isomorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = &fixtures()[2];
    let p = extracted(m);
    for _ in 0..5 {
        let t: Matrix<Rational> = random_unimodular(3, &mut rng);
        let c = conjugate(m, &t).unwrap();
        let sigma = pairs_isomorphic(&p, &extracted(&c)).unwrap();
        // the witness is t up to a scalar
        let ratio = &sigma * &t.inverse().unwrap();
        assert_eq!(ratio, Matrix::scalar(3, ratio[(0, 0)].clone()));
    }
}

#[test]
fn corrupted_module_rejected() {
    let m = &fixtures()[2];
    let mut gens = m.generators().clone();
    let g = qtet::tetra::GenIndex::ALL[0];
    let mut x = gens.get(g).clone();
    x[(1, 0)] = x[(1, 0)].clone() + r(1);
    gens.set(g, x).unwrap();
    let report = verify_module(gens, &q()).unwrap_err();
    assert!(report.has_failure("qweyl*") || report.has_failure("inverse*"), "{report}");
}
