use crate::exactmath::Scalar;

use super::{subspace_sum, LinalgError, Matrix, Subspace};

/// An ordered direct-sum decomposition `V = U_0 + ... + U_d` into nonzero
/// subspaces. `d` is the diameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<S> {
    ambient: usize,
    components: Vec<Subspace<S>>,
}

/// True iff the list consists of nonzero subspaces of a common ambient space
/// whose sum is direct and equal to the whole space.
pub fn is_decomposition<S: Scalar>(components: &[Subspace<S>]) -> bool {
    let Some(first) = components.first() else {
        return false;
    };
    let n = first.ambient();
    if components.iter().any(|c| c.ambient() != n || c.is_zero()) {
        return false;
    }
    let total: usize = components.iter().map(Subspace::dim).sum();
    total == n && subspace_sum(components).is_ok_and(|s| s.is_full())
}

impl<S: Scalar> Decomposition<S> {
    pub fn new(components: Vec<Subspace<S>>) -> Result<Self, LinalgError> {
        let first = components.first().ok_or(LinalgError::Empty)?;
        let ambient = first.ambient();
        if let Some(c) = components.iter().find(|c| c.ambient() != ambient) {
            return Err(LinalgError::AmbientMismatch {
                left: ambient,
                right: c.ambient(),
            });
        }
        if let Some(i) = components.iter().position(Subspace::is_zero) {
            return Err(LinalgError::NotDecomposition(format!("component {i} is zero")));
        }
        if !is_decomposition(&components) {
            return Err(LinalgError::NotDecomposition(
                "components are not independent or do not span".into(),
            ));
        }
        Ok(Decomposition { ambient, components })
    }

    /// The standard basis lines `span(e_0), ..., span(e_{n-1})`.
    pub fn coordinate_lines(n: usize) -> Self {
        Decomposition {
            ambient: n,
            components: (0..n).map(|i| Subspace::coordinate(n, &[i])).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn diameter(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[Subspace<S>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Subspace<S> {
        &self.components[i]
    }

    /// `U_i`, or the zero subspace when `i` is out of range.
    pub fn component_or_zero(&self, i: isize) -> Subspace<S> {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.components.get(i))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    pub fn shape(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    /// The same components in reverse order.
    pub fn inverted(&self) -> Self {
        let mut components = self.components.clone();
        components.reverse();
        Decomposition {
            ambient: self.ambient,
            components,
        }
    }

    /// `U_lo + ... + U_hi`, with indices clamped to `0..=d`; empty ranges give 0.
    pub fn sum_range(&self, lo: isize, hi: isize) -> Subspace<S> {
        let d = self.diameter() as isize;
        let (lo, hi) = (lo.max(0), hi.min(d));
        if lo > hi {
            return Subspace::zero(self.ambient);
        }
        subspace_sum(&self.components[lo as usize..=hi as usize]).expect("nonempty, common ambient")
    }

    /// `U_0 + ... + U_i`: zero for `i < 0`, everything for `i >= d`.
    pub fn sum_upto(&self, i: isize) -> Subspace<S> {
        self.sum_range(0, i)
    }

    /// `U_i + ... + U_d`: everything for `i <= 0`, zero for `i > d`.
    pub fn sum_from(&self, i: isize) -> Subspace<S> {
        self.sum_range(i, self.diameter() as isize)
    }

    pub fn induced_flag(&self) -> Flag<S> {
        Flag {
            ambient: self.ambient,
            components: (0..=self.diameter())
                .map(|i| self.sum_upto(i as isize))
                .collect(),
        }
    }

    /// Invertible matrix whose columns are the concatenated component bases.
    pub fn adapted_basis(&self) -> Matrix<S> {
        let columns: Vec<Vec<S>> = self
            .components
            .iter()
            .flat_map(|c| c.basis().iter().cloned())
            .collect();
        Matrix::from_columns(self.ambient, &columns)
    }

    /// The projections `F_i` onto `U_i` along the other components.
    ///
    /// They satisfy `F_0 + ... + F_d = I` and `F_i F_j = δ_ij F_i`.
    pub fn projections(&self) -> Vec<Matrix<S>> {
        let p = self.adapted_basis();
        let pinv = p.inverse().expect("adapted basis is invertible");
        let mut offset = 0;
        self.components
            .iter()
            .map(|c| {
                let range = offset..offset + c.dim();
                offset += c.dim();
                let e = Matrix::from_fn(self.ambient, self.ambient, |r, col| {
                    if r == col && range.contains(&r) {
                        S::one()
                    } else {
                        S::zero()
                    }
                });
                &(&p * &e) * &pinv
            })
            .collect()
    }

    /// The operator acting as `values[i]` on `U_i`.
    pub fn operator_with_eigenvalues(&self, values: &[S]) -> Result<Matrix<S>, LinalgError> {
        if values.len() != self.components.len() {
            return Err(LinalgError::DiameterMismatch {
                left: self.diameter(),
                right: values.len().wrapping_sub(1),
            });
        }
        let p = self.adapted_basis();
        let diag: Vec<S> = self
            .components
            .iter()
            .zip(values)
            .flat_map(|(c, v)| std::iter::repeat_n(v.clone(), c.dim()))
            .collect();
        Ok(&(&p * &Matrix::diagonal(&diag)) * &p.inverse().expect("adapted basis is invertible"))
    }
}

/// A chain `F_0 ⊆ F_1 ⊆ ... ⊆ F_d = V` with strictly increasing dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag<S> {
    ambient: usize,
    components: Vec<Subspace<S>>,
}

impl<S: Scalar> Flag<S> {
    pub fn new(components: Vec<Subspace<S>>) -> Result<Self, LinalgError> {
        let last = components.last().ok_or(LinalgError::Empty)?;
        let ambient = last.ambient();
        if !last.is_full() {
            return Err(LinalgError::NotFlag("last component is not the whole space".into()));
        }
        if components[0].is_zero() {
            return Err(LinalgError::NotFlag("first component is zero".into()));
        }
        for (i, w) in components.windows(2).enumerate() {
            if w[0].ambient() != w[1].ambient() {
                return Err(LinalgError::AmbientMismatch {
                    left: w[0].ambient(),
                    right: w[1].ambient(),
                });
            }
            if w[0].dim() >= w[1].dim() || !w[0].is_subspace_of(&w[1])? {
                return Err(LinalgError::NotFlag(format!(
                    "components {i} and {} are not strictly nested",
                    i + 1
                )));
            }
        }
        Ok(Flag { ambient, components })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn diameter(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[Subspace<S>] {
        &self.components
    }

    /// `F_i`: zero for `i < 0`, everything for `i >= d`.
    pub fn component(&self, i: isize) -> Subspace<S> {
        if i < 0 {
            Subspace::zero(self.ambient)
        } else {
            self.components[(i as usize).min(self.diameter())].clone()
        }
    }

    /// Dimension increments `dim F_i - dim F_{i-1}`.
    pub fn shape(&self) -> Vec<usize> {
        let mut prev = 0;
        self.components
            .iter()
            .map(|c| {
                let s = c.dim() - prev;
                prev = c.dim();
                s
            })
            .collect()
    }
}

pub fn induced_flag<S: Scalar>(d: &Decomposition<S>) -> Flag<S> {
    d.induced_flag()
}

/// Tests whether two flags of equal diameter are opposite.
///
/// Forms `U_i = F_i ∩ F'_{d-i}` and returns it when it is a decomposition
/// inducing `F` whose inversion induces `F'`, and `F_i ∩ F'_j = 0` whenever
/// `i + j < d`. Otherwise returns `None`.
pub fn flags_opposite<S: Scalar>(
    f: &Flag<S>,
    g: &Flag<S>,
) -> Result<Option<Decomposition<S>>, LinalgError> {
    if f.diameter() != g.diameter() {
        return Err(LinalgError::DiameterMismatch {
            left: f.diameter(),
            right: g.diameter(),
        });
    }
    if f.ambient() != g.ambient() {
        return Err(LinalgError::AmbientMismatch {
            left: f.ambient(),
            right: g.ambient(),
        });
    }
    let d = f.diameter();
    for i in 0..d {
        for j in 0..d - i {
            if !f.components[i].intersect(&g.components[j])?.is_zero() {
                return Ok(None);
            }
        }
    }
    let candidate: Vec<Subspace<S>> = (0..=d)
        .map(|i| f.components[i].intersect(&g.components[d - i]))
        .collect::<Result<_, _>>()?;
    let Ok(u) = Decomposition::new(candidate) else {
        return Ok(None);
    };
    if u.induced_flag() != *f || u.inverted().induced_flag() != *g {
        return Ok(None);
    }
    Ok(Some(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Rational;

    type Sp = Subspace<Rational>;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn is_decomposition_examples() {
        assert!(is_decomposition(&[Sp::coordinate(2, &[0]), Sp::coordinate(2, &[1])]));
        assert!(!is_decomposition(&[Sp::coordinate(2, &[0]), Sp::coordinate(2, &[0])]));
        let diag = Sp::span(2, vec![v(&[1, 1])]).unwrap();
        assert!(is_decomposition(&[diag, Sp::coordinate(2, &[1])]));
        assert!(!is_decomposition(&[Sp::full(2), Sp::zero(2)]));
    }

    #[test]
    fn induced_flag_examples() {
        let one = Decomposition::new(vec![Sp::full(3)]).unwrap();
        assert_eq!(one.induced_flag().components(), &[Sp::full(3)]);
        let lines = Decomposition::<Rational>::coordinate_lines(3);
        let f = lines.induced_flag();
        assert_eq!(f.component(1), Sp::coordinate(3, &[0, 1]));
        assert_eq!(f.shape(), vec![1, 1, 1]);
        let reversed = Flag::new(vec![
            Sp::coordinate(3, &[2]),
            Sp::coordinate(3, &[1, 2]),
            Sp::full(3),
        ])
        .unwrap();
        assert_eq!(lines.inverted().induced_flag(), reversed);
    }

    #[test]
    fn sums_follow_boundary_conventions() {
        let lines = Decomposition::<Rational>::coordinate_lines(3);
        assert!(lines.sum_upto(-1).is_zero());
        assert!(lines.sum_upto(7).is_full());
        assert!(lines.sum_from(0).is_full());
        assert!(lines.sum_from(3).is_zero());
        assert_eq!(lines.sum_from(1), Sp::coordinate(3, &[1, 2]));
    }

    #[test]
    fn flags_opposite_examples() {
        let lines = Decomposition::<Rational>::coordinate_lines(3);
        let f = lines.induced_flag();
        let g = lines.inverted().induced_flag();
        assert_eq!(flags_opposite(&f, &g).unwrap(), Some(lines.clone()));
        assert_eq!(flags_opposite(&f, &f).unwrap(), None);
        let short = Decomposition::<Rational>::coordinate_lines(2).induced_flag();
        assert!(flags_opposite(&f, &short).is_err());
    }

    #[test]
    fn recovers_a_skew_decomposition() {
        let u = Decomposition::new(vec![
            Sp::span(3, vec![v(&[1, 2, 0])]).unwrap(),
            Sp::span(3, vec![v(&[0, 1, -1])]).unwrap(),
            Sp::span(3, vec![v(&[3, 0, 1])]).unwrap(),
        ])
        .unwrap();
        let f = u.induced_flag();
        let g = u.inverted().induced_flag();
        assert_eq!(flags_opposite(&f, &g).unwrap(), Some(u.clone()));
        assert_eq!(flags_opposite(&g, &f).unwrap(), Some(u.inverted()));
    }

    #[test]
    fn projections_resolve_identity() {
        let u = Decomposition::new(vec![
            Sp::span(2, vec![v(&[1, 1])]).unwrap(),
            Sp::span(2, vec![v(&[1, 2])]).unwrap(),
        ])
        .unwrap();
        let ps = u.projections();
        assert!((&ps[0] + &ps[1]).is_identity());
        assert!((&ps[0] * &ps[1]).is_zero());
        assert_eq!(&ps[0] * &ps[0], ps[0]);
        assert_eq!(ps[0].apply(&v(&[1, 1])), v(&[1, 1]));
        let s = u
            .operator_with_eigenvalues(&[Rational::from_i64(2), Rational::from_i64(5)])
            .unwrap();
        assert_eq!(s.apply(&v(&[1, 2])), v(&[5, 10]));
    }
}
