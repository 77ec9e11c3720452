//! q-inverting and q-tridiagonal pairs: axiom verification with canonical
//! witness decompositions, extraction from modules, the `Z4` action,
//! isomorphism testing and the checker for generalized pair conditions.

mod generalized;

pub use generalized::{
    check_assignment, check_induced_flags_opposite, generalized_conditions_check, Condition,
    ConditionOutcome, GeneralizedCheck,
};

use crate::exactmath::{QParam, Scalar, Sign};
use crate::linalg::{
    algebra_closure_dim, kernel, standard_spectrum, Decomposition, Matrix, Subspace,
};
use crate::modrep::ModuleRep;
use crate::report::Report;
use crate::tetra::GenIndex;

/// A certified q-inverting pair `(K, K*)` with the eigenspace decompositions
/// `{V_i}` of `K` and `{V*_i}` of `K*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QInvertingPair<S> {
    q: QParam<S>,
    k: Matrix<S>,
    kstar: Matrix<S>,
    v: Decomposition<S>,
    vstar: Decomposition<S>,
}

/// A certified q-tridiagonal pair `(A, A*)` with its witness decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTridiagonalPair<S> {
    q: QParam<S>,
    a: Matrix<S>,
    astar: Matrix<S>,
    v: Decomposition<S>,
    vstar: Decomposition<S>,
}

impl<S: Scalar> QInvertingPair<S> {
    pub fn q(&self) -> &QParam<S> {
        &self.q
    }
    pub fn k(&self) -> &Matrix<S> {
        &self.k
    }
    pub fn kstar(&self) -> &Matrix<S> {
        &self.kstar
    }
    /// Eigenspaces of `K` for `q^d, ..., q^{-d}`.
    pub fn v(&self) -> &Decomposition<S> {
        &self.v
    }
    /// Eigenspaces of `K*` for `q^δ, ..., q^{-δ}`.
    pub fn vstar(&self) -> &Decomposition<S> {
        &self.vstar
    }
    pub fn diameter(&self) -> usize {
        self.v.diameter()
    }
    pub fn dual_diameter(&self) -> usize {
        self.vstar.diameter()
    }
    pub fn dim(&self) -> usize {
        self.k.rows()
    }
    pub fn k_inverse(&self) -> Matrix<S> {
        self.k.inverse().expect("certified K is invertible")
    }
    pub fn kstar_inverse(&self) -> Matrix<S> {
        self.kstar.inverse().expect("certified K* is invertible")
    }
}

impl<S: Scalar> QTridiagonalPair<S> {
    pub fn q(&self) -> &QParam<S> {
        &self.q
    }
    pub fn a(&self) -> &Matrix<S> {
        &self.a
    }
    pub fn astar(&self) -> &Matrix<S> {
        &self.astar
    }
    pub fn v(&self) -> &Decomposition<S> {
        &self.v
    }
    pub fn vstar(&self) -> &Decomposition<S> {
        &self.vstar
    }
    pub fn diameter(&self) -> usize {
        self.v.diameter()
    }
    pub fn dual_diameter(&self) -> usize {
        self.vstar.diameter()
    }
    pub fn dim(&self) -> usize {
        self.a.rows()
    }
}

/// Every image `X U_i` lies in `target(i)`; one check per `i`.
fn check_images<S: Scalar>(
    report: &mut Report,
    x: &Matrix<S>,
    u: &Decomposition<S>,
    target: impl Fn(isize) -> Subspace<S>,
    check: &str,
) {
    for i in 0..=u.diameter() {
        let image = u.component(i).image(x).expect("square");
        let ok = image.is_subspace_of(&target(i as isize)).expect("common ambient");
        report.check(ok, check, format!("i={i}"));
    }
}

fn check_shapes<S: Scalar>(report: &mut Report, a: &Matrix<S>, b: &Matrix<S>, names: (&str, &str)) -> bool {
    let ok = a.is_square() && b.is_square() && a.rows() == b.rows() && a.rows() > 0;
    if !ok {
        report.fail(
            "shape",
            format!("{},{}", names.0, names.1),
            format!(
                "expected square matrices of one size, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            ),
        );
    }
    ok
}

/// Eigenspaces for `q^{d-2i}` (positive sign), or a spectrum failure.
fn witness<S: Scalar>(report: &mut Report, m: &Matrix<S>, q: &QParam<S>, name: &str) -> Option<Decomposition<S>> {
    match standard_spectrum(m, q) {
        Ok(s) if s.sign == Sign::Plus => {
            report.check(true, "spectrum", name);
            Some(s.decomposition)
        }
        Ok(_) => {
            report.fail("spectrum", name, "eigenvalues are -q^k, expected q^k");
            None
        }
        Err(e) => {
            report.fail("spectrum", name, e.to_string());
            None
        }
    }
}

fn check_irreducible<S: Scalar>(report: &mut Report, a: &Matrix<S>, b: &Matrix<S>) {
    let n = a.rows();
    let dim = algebra_closure_dim(&[a.clone(), b.clone()]).expect("equal sizes");
    if dim != n * n {
        report.fail(
            "irreducible",
            "V",
            format!("generated algebra has dimension {dim} < {}", n * n),
        );
    } else {
        report.check(true, "irreducible", "V");
    }
}

/// Certifies `(K, K*)` as a q-inverting pair.
///
/// The witnesses are the eigenspaces of `K` and `K*` ordered by eigenvalue
/// `q^d, ..., q^{-d}`. Checks, in order: invertibility, spectra, the four
/// containments, equal diameters, irreducibility.
pub fn verify_qinverting<S: Scalar>(
    k: &Matrix<S>,
    kstar: &Matrix<S>,
    q: &QParam<S>,
) -> Result<QInvertingPair<S>, Report> {
    let mut report = Report::new();
    if !check_shapes(&mut report, k, kstar, ("K", "Kstar")) {
        return Err(report);
    }
    let kinv = k.inverse();
    let ksinv = kstar.inverse();
    report.check(kinv.is_some(), "invertible", "K");
    report.check(ksinv.is_some(), "invertible", "Kstar");
    let v = witness(&mut report, k, q, "K");
    let vstar = witness(&mut report, kstar, q, "Kstar");
    let (Some(kinv), Some(ksinv), Some(v), Some(vstar)) = (kinv, ksinv, v, vstar) else {
        return Err(report);
    };
    check_images(&mut report, kstar, &v, |i| v.sum_upto(i + 1), "inverting.kstar-raises");
    check_images(&mut report, &ksinv, &v, |i| v.sum_from(i - 1), "inverting.kstar-inverse-lowers");
    check_images(&mut report, k, &vstar, |i| vstar.sum_from(i - 1), "inverting.k-lowers");
    check_images(&mut report, &kinv, &vstar, |i| vstar.sum_upto(i + 1), "inverting.k-inverse-raises");
    report.check(
        v.diameter() == vstar.diameter(),
        "diameters-equal",
        format!("d={}, dual d={}", v.diameter(), vstar.diameter()),
    );
    check_irreducible(&mut report, k, kstar);
    if !report.passed() {
        return Err(report);
    }
    Ok(QInvertingPair {
        q: q.clone(),
        k: k.clone(),
        kstar: kstar.clone(),
        v,
        vstar,
    })
}

/// Certifies `(A, A*)` as a q-tridiagonal pair.
pub fn verify_qtridiagonal<S: Scalar>(
    a: &Matrix<S>,
    astar: &Matrix<S>,
    q: &QParam<S>,
) -> Result<QTridiagonalPair<S>, Report> {
    let mut report = Report::new();
    if !check_shapes(&mut report, a, astar, ("A", "Astar")) {
        return Err(report);
    }
    let v = witness(&mut report, a, q, "A");
    let vstar = witness(&mut report, astar, q, "Astar");
    let (Some(v), Some(vstar)) = (v, vstar) else {
        return Err(report);
    };
    check_images(&mut report, astar, &v, |i| v.sum_range(i - 1, i + 1), "tridiagonal.astar");
    check_images(&mut report, a, &vstar, |i| vstar.sum_range(i - 1, i + 1), "tridiagonal.a");
    report.check(
        v.diameter() == vstar.diameter(),
        "diameters-equal",
        format!("d={}, dual d={}", v.diameter(), vstar.diameter()),
    );
    check_irreducible(&mut report, a, astar);
    if !report.passed() {
        return Err(report);
    }
    Ok(QTridiagonalPair {
        q: q.clone(),
        a: a.clone(),
        astar: astar.clone(),
        v,
        vstar,
    })
}

fn module_pair<S: Scalar>(m: &ModuleRep<S>, first: GenIndex, second: GenIndex) -> Result<(Matrix<S>, Matrix<S>), Report> {
    if m.sign() != Sign::Plus {
        let mut r = Report::new();
        r.fail("type-one", "V", "module has type -1; normalize first");
        return Err(r);
    }
    Ok((m.x(first).clone(), m.x(second).clone()))
}

/// `(x02, x13)` on a type-1 module, certified.
pub fn extract_qinverting<S: Scalar>(m: &ModuleRep<S>) -> Result<QInvertingPair<S>, Report> {
    let (k, kstar) = module_pair(m, GenIndex::ALL[4], GenIndex::ALL[5])?;
    verify_qinverting(&k, &kstar, m.q())
}

/// `(x01, x23)` on a type-1 module, certified.
pub fn extract_qtridiagonal<S: Scalar>(m: &ModuleRep<S>) -> Result<QTridiagonalPair<S>, Report> {
    let (a, astar) = module_pair(m, GenIndex::ALL[0], GenIndex::ALL[2])?;
    verify_qtridiagonal(&a, &astar, m.q())
}

/// `(K, K*) ↦ (K*, K^{-1})`, re-certified.
pub fn rho_action<S: Scalar>(p: &QInvertingPair<S>) -> Result<QInvertingPair<S>, Report> {
    verify_qinverting(&p.kstar, &p.k_inverse(), &p.q)
}

/// The orbit `(K, K*), (K*, K^{-1}), (K^{-1}, K*^{-1}), (K*^{-1}, K)`.
pub fn z4_orbit<S: Scalar>(p: &QInvertingPair<S>) -> Result<[QInvertingPair<S>; 4], Report> {
    let p1 = rho_action(p)?;
    let p2 = rho_action(&p1)?;
    let p3 = rho_action(&p2)?;
    Ok([p.clone(), p1, p2, p3])
}

/// Which members of a list of pairs are isomorphic to which.
pub fn isomorphism_pattern<S: Scalar>(pairs: &[QInvertingPair<S>]) -> Vec<Vec<bool>> {
    pairs
        .iter()
        .map(|a| pairs.iter().map(|b| pairs_isomorphic(a, b).is_some()).collect())
        .collect()
}

/// An invertible `σ` with `σ K = K' σ` and `σ K* = K*' σ`, if one exists.
pub fn pairs_isomorphic<S: Scalar>(p: &QInvertingPair<S>, p2: &QInvertingPair<S>) -> Option<Matrix<S>> {
    intertwiner(&[(&p.k, &p2.k), (&p.kstar, &p2.kstar)])
}

/// Same as [`pairs_isomorphic`] for q-tridiagonal pairs.
pub fn tdpairs_isomorphic<S: Scalar>(p: &QTridiagonalPair<S>, p2: &QTridiagonalPair<S>) -> Option<Matrix<S>> {
    intertwiner(&[(&p.a, &p2.a), (&p.astar, &p2.astar)])
}

/// Searches the solution space of `σ X = X' σ` (for each listed `(X, X')`)
/// for an invertible element.
///
/// Tries each basis vector, then combinations with coefficients in `1..=3`
/// when the space has dimension at most 4. For irreducible inputs the space
/// has dimension at most 1, so the search is complete there.
pub fn intertwiner<S: Scalar>(pairs: &[(&Matrix<S>, &Matrix<S>)]) -> Option<Matrix<S>> {
    let n = pairs.first()?.0.rows();
    if pairs
        .iter()
        .any(|(x, y)| !x.is_square() || !y.is_square() || x.rows() != n || y.rows() != n)
    {
        return None;
    }
    // unknown σ_{ab} at column a*n + b; equation rows for (i, j) entries
    let mut rows = Vec::new();
    for (x, y) in pairs {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![S::zero(); n * n];
                for k in 0..n {
                    // (σ X)_{ij} = Σ_k σ_{ik} X_{kj}
                    row[i * n + k] = row[i * n + k].clone() + x[(k, j)].clone();
                    // (X' σ)_{ij} = Σ_k X'_{ik} σ_{kj}
                    row[k * n + j] = row[k * n + j].clone() - y[(i, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows).expect("rows have equal length");
    let solutions = kernel(&system);
    let basis: Vec<Matrix<S>> = solutions
        .basis()
        .iter()
        .map(|v| Matrix::from_vector(n, n, v.clone()))
        .collect();
    if let Some(m) = basis.iter().find(|m| m.is_invertible()) {
        return Some(m.clone());
    }
    if basis.len() < 2 || basis.len() > 4 {
        return None;
    }
    let mut coeffs = vec![1i64; basis.len()];
    loop {
        let combo = basis
            .iter()
            .zip(&coeffs)
            .fold(Matrix::zeros(n, n), |acc, (b, &c)| &acc + &b.scale(&S::from_i64(c)));
        if combo.is_invertible() {
            return Some(combo);
        }
        let mut pos = 0;
        loop {
            if pos == coeffs.len() {
                return None;
            }
            coeffs[pos] += 1;
            if coeffs[pos] <= 3 {
                break;
            }
            coeffs[pos] = 1;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Rational;
    use crate::modrep::{fixtures::d1_module, verify_module};

    fn q() -> QParam<Rational> {
        QParam::default()
    }

    fn one() -> Matrix<Rational> {
        Matrix::identity(1)
    }

    #[test]
    fn dim_one_pairs() {
        let p = verify_qinverting(&one(), &one(), &q()).unwrap();
        assert_eq!(p.diameter(), 0);
        assert_eq!(rho_action(&p).unwrap(), p);
        let t = verify_qtridiagonal(&one(), &one(), &q()).unwrap();
        assert_eq!(t.diameter(), 0);
    }

    #[test]
    fn diagonal_pairs_are_reducible() {
        let qq = q();
        let diag = Matrix::diagonal(&[qq.power(1), qq.power(-1)]);
        let err = verify_qinverting(&diag, &diag, &qq).unwrap_err();
        assert!(err.has_failure("irreducible"));
        assert_eq!(err.failures.len(), 1);
        let err = verify_qtridiagonal(&diag, &diag, &qq).unwrap_err();
        assert!(err.has_failure("irreducible"));
    }

    #[test]
    fn two_by_two_tridiagonal_pair() {
        let qq = q();
        let a = Matrix::diagonal(&[qq.power(1), qq.power(-1)]);
        let astar = Matrix::from_rows(vec![
            vec![qq.power(1) + qq.power(-1), Rational::one()],
            vec![-Rational::one(), Rational::zero()],
        ])
        .unwrap();
        let p = verify_qtridiagonal(&a, &astar, &qq).unwrap();
        assert_eq!((p.diameter(), p.dual_diameter()), (1, 1));
    }

    #[test]
    fn rejects_singular_and_misshapen() {
        let qq = q();
        let z = Matrix::<Rational>::zeros(1, 1);
        let err = verify_qinverting(&z, &one(), &qq).unwrap_err();
        assert!(err.has_failure("invertible"));
        let err = verify_qinverting(&Matrix::identity(2), &one(), &qq).unwrap_err();
        assert!(err.has_failure("shape"));
    }

    #[test]
    fn d1_module_pairs() {
        let m = verify_module(d1_module(), &q()).unwrap();
        let p = extract_qinverting(&m).unwrap();
        assert_eq!((p.diameter(), p.dual_diameter(), p.dim()), (1, 1, 2));
        let t = extract_qtridiagonal(&m).unwrap();
        assert_eq!(t.diameter(), 1);
        let orbit = z4_orbit(&p).unwrap();
        assert_eq!(rho_action(&orbit[3]).unwrap(), p);
        let pattern = isomorphism_pattern(&orbit);
        for (i, row) in pattern.iter().enumerate() {
            assert!(row[i]);
        }
    }

    #[test]
    fn isomorphism_by_conjugation() {
        let m = verify_module(d1_module(), &q()).unwrap();
        let p = extract_qinverting(&m).unwrap();
        let t = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let pc = verify_qinverting(
            &p.k().conjugate_by(&t).unwrap(),
            &p.kstar().conjugate_by(&t).unwrap(),
            &q(),
        )
        .unwrap();
        let sigma = pairs_isomorphic(&p, &pc).unwrap();
        // σ is proportional to T
        let ratio = sigma[(0, 0)].clone() / t[(0, 0)].clone();
        assert_eq!(sigma, t.scale(&ratio));
        assert!(pairs_isomorphic(&p, &p).unwrap().scale(&Rational::from_i64(1)).is_invertible());
        let trivial = verify_qinverting(&one(), &one(), &q()).unwrap();
        assert!(pairs_isomorphic(&p, &trivial).is_none());
    }
}
