//! Presentation of the q-tetrahedron algebra: generators `x_rs`, the defining
//! relations as residual matrices, and the automorphisms `ρ` and `x ↦ -x`
//! acting on generator assignments.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactmath::{QParam, Scalar};
use crate::linalg::Matrix;

/// An element of `Z/4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z4(u8);

impl Z4 {
    pub const ALL: [Z4; 4] = [Z4(0), Z4(1), Z4(2), Z4(3)];

    pub fn new(n: i64) -> Self {
        Z4(n.rem_euclid(4) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn offset(self, k: i64) -> Self {
        Z4::new(i64::from(self.0) + k)
    }

    /// `self - other` as a representative in `0..4`.
    pub fn diff(self, other: Z4) -> u8 {
        (self.0 + 4 - other.0) % 4
    }
}

impl fmt::Display for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A generator index `(r, s)` with `s - r ∈ {1, 2}` mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenIndex {
    r: Z4,
    s: Z4,
}

impl GenIndex {
    /// All eight generators in serialization order.
    pub const ALL: [GenIndex; 8] = [
        GenIndex { r: Z4(0), s: Z4(1) },
        GenIndex { r: Z4(1), s: Z4(2) },
        GenIndex { r: Z4(2), s: Z4(3) },
        GenIndex { r: Z4(3), s: Z4(0) },
        GenIndex { r: Z4(0), s: Z4(2) },
        GenIndex { r: Z4(1), s: Z4(3) },
        GenIndex { r: Z4(2), s: Z4(0) },
        GenIndex { r: Z4(3), s: Z4(1) },
    ];

    pub fn new(r: i64, s: i64) -> Option<Self> {
        let (r, s) = (Z4::new(r), Z4::new(s));
        matches!(s.diff(r), 1 | 2).then_some(GenIndex { r, s })
    }

    pub fn r(self) -> Z4 {
        self.r
    }

    pub fn s(self) -> Z4 {
        self.s
    }

    /// `s - r`, either 1 or 2.
    pub fn step(self) -> u8 {
        self.s.diff(self.r)
    }

    /// `(r + k, s + k)`.
    pub fn shift(self, k: i64) -> Self {
        GenIndex {
            r: self.r.offset(k),
            s: self.s.offset(k),
        }
    }

    /// Position in [`GenIndex::ALL`].
    pub fn position(self) -> usize {
        let r = usize::from(self.r.0);
        if self.step() == 1 {
            r
        } else {
            4 + r
        }
    }

    pub fn name(self) -> String {
        format!("x{}{}", self.r, self.s)
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let rest = name.strip_prefix('x')?;
        let mut digits = rest.chars();
        let r = digits.next()?.to_digit(10)?;
        let s = digits.next()?.to_digit(10)?;
        if digits.next().is_some() || r > 3 || s > 3 {
            return None;
        }
        GenIndex::new(i64::from(r), i64::from(s))
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TetraError {
    #[error("generator {0} is missing")]
    MissingGenerator(String),
    #[error("unknown generator name {0:?}")]
    UnknownGenerator(String),
    #[error("generator {name} is {rows}x{cols}, expected {dim}x{dim}")]
    BadSize {
        name: String,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("({r},{s},{t}) is not an admissible index triple")]
    InvalidPattern { r: i64, s: i64, t: i64 },
}

/// One square matrix of a common size for each of the eight generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenAssignment<S> {
    dim: usize,
    mats: Vec<Matrix<S>>,
}

impl<S: Scalar> GenAssignment<S> {
    pub fn new(mut map: BTreeMap<GenIndex, Matrix<S>>) -> Result<Self, TetraError> {
        let mut mats = Vec::with_capacity(8);
        for g in GenIndex::ALL {
            mats.push(map.remove(&g).ok_or_else(|| TetraError::MissingGenerator(g.name()))?);
        }
        Self::from_vec(mats)
    }

    /// Matrices listed in [`GenIndex::ALL`] order.
    pub fn from_vec(mats: Vec<Matrix<S>>) -> Result<Self, TetraError> {
        if mats.len() != 8 {
            return Err(TetraError::MissingGenerator(
                GenIndex::ALL[mats.len().min(7)].name(),
            ));
        }
        let dim = mats[0].rows();
        if dim == 0 {
            return Err(TetraError::ZeroDimension);
        }
        for (g, m) in GenIndex::ALL.iter().zip(&mats) {
            if m.rows() != dim || m.cols() != dim {
                return Err(TetraError::BadSize {
                    name: g.name(),
                    rows: m.rows(),
                    cols: m.cols(),
                    dim,
                });
            }
        }
        Ok(GenAssignment { dim, mats })
    }

    pub fn from_fn(mut f: impl FnMut(GenIndex) -> Matrix<S>) -> Result<Self, TetraError> {
        Self::from_vec(GenIndex::ALL.iter().map(|&g| f(g)).collect())
    }

    /// Every generator acting as the scalar `c`.
    pub fn scalar(dim: usize, c: S) -> Self {
        GenAssignment {
            dim,
            mats: vec![Matrix::scalar(dim, c); 8],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, g: GenIndex) -> &Matrix<S> {
        &self.mats[g.position()]
    }

    pub fn set(&mut self, g: GenIndex, m: Matrix<S>) -> Result<(), TetraError> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(TetraError::BadSize {
                name: g.name(),
                rows: m.rows(),
                cols: m.cols(),
                dim: self.dim,
            });
        }
        self.mats[g.position()] = m;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (GenIndex, &Matrix<S>)> {
        GenIndex::ALL.into_iter().zip(&self.mats)
    }

    pub fn map(&self, mut f: impl FnMut(GenIndex, &Matrix<S>) -> Matrix<S>) -> Self {
        GenAssignment {
            dim: self.dim,
            mats: self.iter().map(|(g, m)| f(g, m)).collect(),
        }
    }

    /// `x_{r,s}` for raw indices; panics if `(r, s)` is not a generator.
    pub fn x(&self, r: i64, s: i64) -> &Matrix<S> {
        self.get(GenIndex::new(r, s).expect("not a generator index"))
    }
}

/// One defining relation instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `x_{r,r+2} x_{r+2,r} = 1`.
    Inverse { r: Z4 },
    /// `(q x_rs x_st - q^{-1} x_st x_rs) / (q - q^{-1}) = 1`.
    QWeyl { r: Z4, s: Z4, t: Z4 },
    /// Cubic q-Serre relation between `x_{r,r+1}` and `x_{r+2,r+3}`.
    QSerre { r: Z4 },
}

impl Relation {
    /// The 20 relation instances: 4 inverse, 12 q-Weyl, 4 q-Serre.
    pub fn all() -> Vec<Relation> {
        let mut out: Vec<Relation> = Z4::ALL.iter().map(|&r| Relation::Inverse { r }).collect();
        for (a, b) in [(1, 1), (1, 2), (2, 1)] {
            for r in Z4::ALL {
                out.push(Relation::QWeyl {
                    r,
                    s: r.offset(a),
                    t: r.offset(a + b),
                });
            }
        }
        out.extend(Z4::ALL.iter().map(|&r| Relation::QSerre { r }));
        out
    }

    pub fn family(&self) -> &'static str {
        match self {
            Relation::Inverse { .. } => "inverse",
            Relation::QWeyl { .. } => "qweyl",
            Relation::QSerre { .. } => "qserre",
        }
    }

    /// Check name listing the generators involved, e.g. `inverse[x02,x20]`,
    /// `qweyl[x01,x12]`, `qserre[x30,x12]`.
    pub fn name(&self) -> String {
        match *self {
            Relation::Inverse { r } => format!("inverse[x{r}{},x{}{r}]", r.offset(2), r.offset(2)),
            Relation::QWeyl { r, s, t } => format!("qweyl[x{r}{s},x{s}{t}]"),
            Relation::QSerre { r } => {
                format!("qserre[x{r}{},x{}{}]", r.offset(1), r.offset(2), r.offset(3))
            }
        }
    }

    pub fn residual<S: Scalar>(&self, a: &GenAssignment<S>, q: &QParam<S>) -> Matrix<S> {
        match *self {
            Relation::Inverse { r } => residual_t1(a, r),
            Relation::QWeyl { r, s, t } => residual_t2(
                a,
                q,
                i64::from(r.value()),
                i64::from(s.value()),
                i64::from(t.value()),
            )
            .expect("enumerated triples are admissible"),
            Relation::QSerre { r } => residual_qserre(a, q, r),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `X_{r,r+2} X_{r+2,r} - I`.
pub fn residual_t1<S: Scalar>(a: &GenAssignment<S>, r: Z4) -> Matrix<S> {
    let r = i64::from(r.value());
    (a.x(r, r + 2) * a.x(r + 2, r)).shifted(&S::one())
}

/// `(q X_rs X_st - q^{-1} X_st X_rs) / (q - q^{-1}) - I` for an admissible
/// triple, i.e. `(s - r, t - s) ∈ {(1,1), (1,2), (2,1)}` mod 4.
pub fn residual_t2<S: Scalar>(
    a: &GenAssignment<S>,
    q: &QParam<S>,
    r: i64,
    s: i64,
    t: i64,
) -> Result<Matrix<S>, TetraError> {
    let steps = (Z4::new(s).diff(Z4::new(r)), Z4::new(t).diff(Z4::new(s)));
    if !matches!(steps, (1, 1) | (1, 2) | (2, 1)) {
        return Err(TetraError::InvalidPattern { r, s, t });
    }
    Ok(q_weyl_residual(a.x(r, s), a.x(s, t), q))
}

/// `(q X Y - q^{-1} Y X) / (q - q^{-1}) - I`.
pub fn q_weyl_residual<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>, q: &QParam<S>) -> Matrix<S> {
    let xy = x * y;
    let yx = y * x;
    let num = &xy.scale(&q.power(1)) - &yx.scale(&q.power(-1));
    num.scale(&q.q_minus_inverse().inv().expect("q - 1/q is nonzero"))
        .shifted(&S::one())
}

/// `X^3 Y - [3] X^2 Y X + [3] X Y X^2 - Y X^3` with `X = X_{r,r+1}` and
/// `Y = X_{r+2,r+3}`.
pub fn residual_qserre<S: Scalar>(a: &GenAssignment<S>, q: &QParam<S>, r: Z4) -> Matrix<S> {
    let r = i64::from(r.value());
    q_serre_expression(a.x(r, r + 1), a.x(r + 2, r + 3), q)
}

/// `X^3 Y - [3] X^2 Y X + [3] X Y X^2 - Y X^3`.
pub fn q_serre_expression<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>, q: &QParam<S>) -> Matrix<S> {
    let b3 = q.bracket(3);
    let x2 = x * x;
    let x3 = &x2 * x;
    let t0 = &x3 * y;
    let t1 = &(&x2 * y) * x;
    let t2 = &(x * y) * &x2;
    let t3 = y * &x3;
    &(&(&t0 - &t1.scale(&b3)) + &t2.scale(&b3)) - &t3
}

/// The automorphism `x_rs ↦ x_{r+1,s+1}` transported to assignments: the
/// output at `(r, s)` is the input at `(r-1, s-1)`.
pub fn apply_rho<S: Scalar>(a: &GenAssignment<S>) -> GenAssignment<S> {
    a.map(|g, _| a.get(g.shift(-1)).clone())
}

/// The automorphism `x_rs ↦ -x_rs`.
pub fn apply_sign_flip<S: Scalar>(a: &GenAssignment<S>) -> GenAssignment<S> {
    a.map(|_, m| -m)
}
