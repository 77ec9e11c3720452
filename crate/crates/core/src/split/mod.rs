//! From a q-inverting pair back to a module: the lattice `V_ij`, the split
//! decomposition and split operator, and module reconstruction. Also the
//! eigenspace criteria for the cubic and q-Weyl expressions.

use thiserror::Error;

use crate::exactmath::{QParam, Scalar, Sign};
use crate::linalg::{eigenspace, subspace_sum, Decomposition, Matrix, Subspace};
use crate::modrep::{verify_module, ModuleRep};
use crate::pairs::{z4_orbit, QInvertingPair};
use crate::report::Report;
use crate::tetra::{q_serre_expression, q_weyl_residual, GenAssignment, GenIndex};

/// `(V_0 + ... + V_i) ∩ (V*_0 + ... + V*_j)`; a negative index gives 0 and an
/// index past the diameter gives `V`.
pub fn v_ij<S: Scalar>(p: &QInvertingPair<S>, i: isize, j: isize) -> Subspace<S> {
    p.v()
        .sum_upto(i)
        .intersect(&p.vstar().sum_upto(j))
        .expect("common ambient")
}

/// Checks the basic facts about the `V_ij` lattice of a certified pair:
/// boundary rows and columns, the actions of `K^{-1}` and `K*`, equal
/// diameters, vanishing below the antidiagonal, and the antidiagonal sums
/// `W_r = V_{0r} + V_{1,r-1} + ... + V_{r0}`.
pub fn check_vij_lemmas<S: Scalar>(p: &QInvertingPair<S>) -> Report {
    let mut report = Report::new();
    let q = p.q();
    let d = p.diameter() as isize;
    let delta = p.dual_diameter() as isize;
    let n = p.dim();
    let kinv = p.k_inverse();
    for i in 0..=d {
        report.check(v_ij(p, i, delta) == p.v().sum_upto(i), "vij.last-column", format!("i={i}"));
    }
    for j in 0..=delta {
        report.check(v_ij(p, d, j) == p.vstar().sum_upto(j), "vij.last-row", format!("j={j}"));
    }
    for i in 0..=d {
        for j in 0..=delta {
            let vij = v_ij(p, i, j);
            let a = kinv.shifted(&q.power((2 * i - d) as i64));
            let ok = vij.image(&a).unwrap().is_subspace_of(&v_ij(p, i - 1, j + 1)).unwrap();
            report.check(ok, "vij.k-inverse", format!("i={i}, j={j}"));
            let b = p.kstar().shifted(&q.power((delta - 2 * j) as i64));
            let ok = vij.image(&b).unwrap().is_subspace_of(&v_ij(p, i + 1, j - 1)).unwrap();
            report.check(ok, "vij.kstar", format!("i={i}, j={j}"));
            if i + j < d {
                report.check(vij.is_zero(), "vij.vanish", format!("i={i}, j={j}"));
            }
        }
    }
    report.check(d == delta, "diameters-equal", format!("d={d}, dual d={delta}"));
    for r in 0..=d {
        let terms: Vec<Subspace<S>> = (0..=r).map(|k| v_ij(p, k, r - k)).collect();
        let w = subspace_sum(&terms).expect("nonempty");
        if r < d {
            report.check(w.is_zero(), "vij.antidiagonal-zero", format!("r={r}"));
        } else {
            report.check(w.is_full() && w.ambient() == n, "vij.antidiagonal-full", format!("r={r}"));
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("split components do not form a decomposition: {0}")]
    NotDecomposition(String),
    #[error("theta must be nonzero")]
    ZeroTheta,
    #[error("matrices must be square of one size")]
    Shape,
}

/// `U_i = V_{i,d-i}`, validated as a decomposition.
pub fn split_decomposition<S: Scalar>(p: &QInvertingPair<S>) -> Result<Decomposition<S>, SplitError> {
    let d = p.diameter() as isize;
    let comps = (0..=d).map(|i| v_ij(p, i, d - i)).collect();
    Decomposition::new(comps).map_err(|e| SplitError::NotDecomposition(e.to_string()))
}

/// The operator acting as `q^{d-2i}` on `U_i`, assembled from the
/// projections onto the split components.
pub fn split_operator<S: Scalar>(p: &QInvertingPair<S>) -> Result<Matrix<S>, SplitError> {
    let u = split_decomposition(p)?;
    Ok(operator_from_projections(&u, p.q()))
}

fn operator_from_projections<S: Scalar>(u: &Decomposition<S>, q: &QParam<S>) -> Matrix<S> {
    let d = u.diameter() as i64;
    u.projections()
        .iter()
        .enumerate()
        .fold(Matrix::zeros(u.ambient(), u.ambient()), |acc, (i, f)| {
            &acc + &f.scale(&q.power(d - 2 * i as i64))
        })
}

/// A certified pair with its split decomposition and split operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData<S> {
    pub pair: QInvertingPair<S>,
    pub u: Decomposition<S>,
    pub s: Matrix<S>,
}

pub fn split_data<S: Scalar>(p: &QInvertingPair<S>) -> Result<SplitData<S>, SplitError> {
    let u = split_decomposition(p)?;
    let s = operator_from_projections(&u, p.q());
    Ok(SplitData {
        pair: p.clone(),
        u,
        s,
    })
}

/// Checks the split decomposition against `K^{-1}`, `K*`, the flags of the
/// pair, and the split operator's eigenspaces.
pub fn check_split_lemmas<S: Scalar>(p: &QInvertingPair<S>) -> Report {
    let mut report = Report::new();
    let data = match split_data(p) {
        Ok(data) => data,
        Err(e) => {
            report.fail("split.decomposition", "U", e.to_string());
            return report;
        }
    };
    report.check(true, "split.decomposition", "U");
    let q = p.q();
    let u = &data.u;
    let d = p.diameter() as isize;
    let kinv = p.k_inverse();
    for i in 0..=d {
        let ui = u.component(i as usize);
        let a = kinv.shifted(&q.power((2 * i - d) as i64));
        let ok = ui.image(&a).unwrap().is_subspace_of(&u.component_or_zero(i - 1)).unwrap();
        report.check(ok, "split.k-inverse", format!("i={i}"));
        let b = p.kstar().shifted(&q.power((2 * i - d) as i64));
        let ok = ui.image(&b).unwrap().is_subspace_of(&u.component_or_zero(i + 1)).unwrap();
        report.check(ok, "split.kstar", format!("i={i}"));
        report.check(u.sum_upto(i) == p.v().sum_upto(i), "split.prefix", format!("i={i}"));
        report.check(u.sum_from(d - i) == p.vstar().sum_upto(i), "split.suffix", format!("i={i}"));
        let lambda = q.power((d - 2 * i) as i64);
        let ok = eigenspace(&data.s, &lambda).unwrap() == *ui;
        report.check(ok, "split.operator", format!("i={i}"));
    }
    report
}

/// Builds the module of a certified pair: `x02, x13, x20, x31` act as
/// `K, K*, K^{-1}, K*^{-1}` and `x01, x12, x23, x30` as the split operators of
/// the four pairs in the `Z4` orbit, each re-certified first. The result is
/// certified by [`verify_module`].
pub fn reconstruct_module<S: Scalar>(p: &QInvertingPair<S>) -> Result<ModuleRep<S>, Report> {
    let orbit = z4_orbit(p)?;
    let mut splits = Vec::with_capacity(4);
    for (n, member) in orbit.iter().enumerate() {
        match split_operator(member) {
            Ok(s) => splits.push(s),
            Err(e) => {
                let mut r = Report::new();
                r.fail("split.decomposition", format!("orbit member {n}"), e.to_string());
                return Err(r);
            }
        }
    }
    let mut mats = splits;
    mats.extend([p.k().clone(), p.kstar().clone(), p.k_inverse(), p.kstar_inverse()]);
    let gens = GenAssignment::from_vec(mats).expect("eight square matrices of one size");
    let m = verify_module(gens, p.q())?;
    let mut report = Report::new();
    report.check(m.sign() == Sign::Plus, "type-one", "reconstructed module");
    report.check(
        m.diameter() == p.diameter(),
        "diameters-equal",
        format!("module d={}, pair d={}", m.diameter(), p.diameter()),
    );
    report.into_result().map(|_| m)
}

/// Intermediate containments used to show that the reconstructed action
/// satisfies the relations, checked on the split decomposition `U` of
/// `(x02, x13)` and on the eigenspace decompositions `V`, `V*`.
pub fn check_reconstruction_steps<S: Scalar>(m: &ModuleRep<S>, p: &QInvertingPair<S>) -> Report {
    let mut report = Report::new();
    let u = match split_decomposition(p) {
        Ok(u) => u,
        Err(e) => {
            report.fail("split.decomposition", "U", e.to_string());
            return report;
        }
    };
    let q = m.q();
    let d = p.diameter() as isize;
    let x12 = m.x(GenIndex::ALL[1]);
    let x23 = m.x(GenIndex::ALL[2]);
    let (v, vstar) = (p.v(), p.vstar());
    let within = |x: &Matrix<S>, s: &Subspace<S>, t: &Subspace<S>| s.image(x).unwrap().is_subspace_of(t).unwrap();
    for i in 0..=d {
        let up = q.power((2 * i - d) as i64);
        let down = q.power((d - 2 * i) as i64);
        let loc = format!("i={i}");
        let iu = i as usize;
        report.check(
            within(&x12.shifted(&down), vstar.component(iu), &vstar.component_or_zero(i - 1)),
            "step.x12-on-Vstar",
            loc.clone(),
        );
        report.check(
            within(&x12.shifted(&down), v.component(iu), &v.component_or_zero(i + 1)),
            "step.x12-on-V",
            loc.clone(),
        );
        let x12u = x12.shifted(&up);
        report.check(within(&x12u, u.component(iu), &u.sum_from(i + 1)), "step.x12-upper", loc.clone());
        report.check(within(&x12u, u.component(iu), &u.sum_upto(i + 1)), "step.x12-lower", loc.clone());
        report.check(within(&x12u, u.component(iu), &u.component_or_zero(i + 1)), "step.x12-shift", loc.clone());
        report.check(
            within(&x23.shifted(&up), v.component(iu), &v.component_or_zero(i + 1)),
            "step.x23-on-V",
            loc.clone(),
        );
        report.check(
            within(&x23.shifted(&down), vstar.component(iu), &vstar.component_or_zero(i + 1)),
            "step.x23-on-Vstar",
            loc.clone(),
        );
        report.check(within(x23, u.component(iu), &u.sum_upto(i + 1)), "step.x23-upper", loc.clone());
        report.check(within(x23, u.component(iu), &u.sum_from(i - 1)), "step.x23-lower", loc.clone());
        report.check(within(x23, u.component(iu), &u.sum_range(i - 1, i + 1)), "step.x23-tridiagonal", loc);
    }
    report
}

/// Both sides of each eigenspace criterion for a pair `(A, B)` and `θ ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaSides {
    /// Cubic expression vanishes on `V_A(θ)` / `B V_A(θ) ⊆ V_A(q²θ) + V_A(θ) + V_A(q⁻²θ)`.
    pub cubic: (bool, bool),
    /// q-Weyl expression vanishes on `V_A(θ)` / `(B - θ⁻¹) V_A(θ) ⊆ V_A(q⁻²θ)`.
    pub weyl: (bool, bool),
    /// q-Weyl expression vanishes on `V_B(θ)` / `(A - θ⁻¹) V_B(θ) ⊆ V_B(q²θ)`.
    pub weyl_dual: (bool, bool),
}

impl LemmaSides {
    pub fn all_agree(&self) -> bool {
        self.cubic.0 == self.cubic.1 && self.weyl.0 == self.weyl.1 && self.weyl_dual.0 == self.weyl_dual.1
    }
}

/// Evaluates both sides of the three criteria as exact subspace conditions.
pub fn lemma_key_predicates<S: Scalar>(
    a: &Matrix<S>,
    b: &Matrix<S>,
    theta: &S,
    q: &QParam<S>,
) -> Result<LemmaSides, SplitError> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(SplitError::Shape);
    }
    let theta_inv = theta.inv().ok_or(SplitError::ZeroTheta)?;
    let q2 = q.power(2);
    let qm2 = q.power(-2);
    let eig = |m: &Matrix<S>, l: S| eigenspace(m, &l).expect("square");
    let vanishes = |e: &Matrix<S>, s: &Subspace<S>| s.image(e).unwrap().is_zero();
    let within = |x: &Matrix<S>, s: &Subspace<S>, t: &Subspace<S>| s.image(x).unwrap().is_subspace_of(t).unwrap();

    let va = eig(a, theta.clone());
    let vb = eig(b, theta.clone());
    let cubic = q_serre_expression(a, b, q);
    let near = subspace_sum(&[
        eig(a, q2.clone() * theta.clone()),
        va.clone(),
        eig(a, qm2.clone() * theta.clone()),
    ])
    .expect("nonempty");
    let weyl = q_weyl_residual(a, b, q);
    Ok(LemmaSides {
        cubic: (vanishes(&cubic, &va), within(b, &va, &near)),
        weyl: (
            vanishes(&weyl, &va),
            within(&b.shifted(&theta_inv), &va, &eig(a, qm2 * theta.clone())),
        ),
        weyl_dual: (
            vanishes(&weyl, &vb),
            within(&a.shifted(&theta_inv), &vb, &eig(b, q2 * theta.clone())),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Rational;
    use crate::modrep::fixtures::d1_module;
    use crate::pairs::{extract_qinverting, verify_qinverting};

    fn q() -> QParam<Rational> {
        QParam::default()
    }

    #[test]
    fn trivial_pair() {
        let one = Matrix::<Rational>::identity(1);
        let p = verify_qinverting(&one, &one, &q()).unwrap();
        assert!(v_ij(&p, -1, 0).is_zero());
        assert!(v_ij(&p, 0, 0).is_full());
        assert!(check_vij_lemmas(&p).passed());
        assert!(split_decomposition(&p).unwrap().component(0).is_full());
        assert!(split_operator(&p).unwrap().is_identity());
        let m = reconstruct_module(&p).unwrap();
        assert_eq!(m.generators(), &GenAssignment::scalar(1, Rational::one()));
    }

    #[test]
    fn d1_roundtrip() {
        let m = verify_module(d1_module(), &q()).unwrap();
        let p = extract_qinverting(&m).unwrap();
        let report = check_vij_lemmas(&p);
        assert!(report.passed(), "{report}");
        let u = split_decomposition(&p).unwrap();
        assert_eq!(u.component(0), p.v().component(0));
        let s = split_operator(&p).unwrap();
        assert_eq!(s.trace(), q().power(1) + q().power(-1));
        assert!(check_split_lemmas(&p).passed());
        let back = reconstruct_module(&p).unwrap();
        assert_eq!(back, m);
        let steps = check_reconstruction_steps(&back, &p);
        assert!(steps.passed(), "{steps}");
    }

    #[test]
    fn coordinate_split_operator_is_diagonal() {
        // K upper triangular and K* lower triangular with the standard
        // spectrum have split decomposition the coordinate lines
        let qq = q();
        let k = Matrix::from_rows(vec![
            vec![qq.power(1), Rational::one()],
            vec![Rational::zero(), qq.power(-1)],
        ])
        .unwrap();
        let kstar = Matrix::from_rows(vec![
            vec![qq.power(-1), Rational::zero()],
            vec![Rational::one(), qq.power(1)],
        ])
        .unwrap();
        let p = verify_qinverting(&k, &kstar, &qq).unwrap();
        let u = split_decomposition(&p).unwrap();
        assert_eq!(u, Decomposition::coordinate_lines(2));
        assert_eq!(split_operator(&p).unwrap(), Matrix::diagonal(&[qq.power(1), qq.power(-1)]));
    }

    #[test]
    fn lemma_examples() {
        let qq = q();
        let a = Matrix::diagonal(&[qq.power(1), qq.power(-1)]);
        let sides = lemma_key_predicates(&a, &Matrix::identity(2), &qq.power(1), &qq).unwrap();
        assert_eq!(sides.cubic, (true, true));
        assert!(sides.all_agree());
        let b = Matrix::from_rows(vec![
            vec![qq.power(-1), Rational::zero()],
            vec![Rational::one(), qq.power(1)],
        ])
        .unwrap();
        let sides = lemma_key_predicates(&a, &b, &qq.power(1), &qq).unwrap();
        assert!(sides.all_agree());
        assert_eq!(sides.weyl, (true, true));
        assert_eq!(
            lemma_key_predicates(&a, &b, &Rational::zero(), &qq),
            Err(SplitError::ZeroTheta)
        );
    }
}
