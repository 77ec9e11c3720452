//! Certified finite-dimensional modules: type and diameter, the eigenspace
//! decompositions `[r,s]`, shape, the four flags and the action tables.

use crate::exactmath::{QParam, Scalar, Sign};
use crate::linalg::{
    algebra_closure_dim, eigenspace, flags_opposite, standard_spectrum, Decomposition, Flag,
    Matrix, Subspace,
};
use crate::report::Report;
use crate::tetra::{GenAssignment, GenIndex, Relation, Z4};

/// A generator assignment certified to be an irreducible module with a
/// standard spectrum. Only [`verify_module`] constructs one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep<S> {
    q: QParam<S>,
    gens: GenAssignment<S>,
    sign: Sign,
    diameter: usize,
}

impl<S: Scalar> ModuleRep<S> {
    pub fn q(&self) -> &QParam<S> {
        &self.q
    }

    pub fn generators(&self) -> &GenAssignment<S> {
        &self.gens
    }

    pub fn into_generators(self) -> GenAssignment<S> {
        self.gens
    }

    pub fn x(&self, g: GenIndex) -> &Matrix<S> {
        self.gens.get(g)
    }

    /// The type `ε`.
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn dim(&self) -> usize {
        self.gens.dim()
    }
}

/// Checks every relation, the spectrum of every generator and irreducibility.
///
/// Type and diameter are read off `x01`; every other generator must share
/// them. On failure the report lists every failed check.
pub fn verify_module<S: Scalar>(
    gens: GenAssignment<S>,
    q: &QParam<S>,
) -> Result<ModuleRep<S>, Report> {
    let mut report = Report::new();
    for rel in Relation::all() {
        report.check_zero(&rel.residual(&gens, q), &rel.name(), "V");
    }
    let mut profile: Option<(Sign, usize)> = None;
    for (g, m) in gens.iter() {
        match standard_spectrum(m, q) {
            Ok(s) => match profile {
                None => profile = Some((s.sign, s.diameter)),
                Some(p) => {
                    report.check(p == (s.sign, s.diameter), "spectrum-profile", g.name());
                }
            },
            Err(e) => report.fail("spectrum", g.name(), e.to_string()),
        }
    }
    let n = gens.dim();
    let mats: Vec<Matrix<S>> = gens.iter().map(|(_, m)| m.clone()).collect();
    let closure = algebra_closure_dim(&mats).expect("generators share a size");
    if closure != n * n {
        report.fail(
            "irreducible",
            "V",
            format!("generated algebra has dimension {closure} < {}", n * n),
        );
    }
    match (report.passed(), profile) {
        (true, Some((sign, diameter))) => Ok(ModuleRep {
            q: q.clone(),
            gens,
            sign,
            diameter,
        }),
        _ => Err(report),
    }
}

/// Multiplies every generator by `ε`, giving a module of type 1.
pub fn normalize_type<S: Scalar>(m: &ModuleRep<S>) -> ModuleRep<S> {
    let eps: S = m.sign.to_scalar();
    ModuleRep {
        q: m.q.clone(),
        gens: m.gens.map(|_, x| x.scale(&eps)),
        sign: Sign::Plus,
        diameter: m.diameter,
    }
}

fn require_type_one<S: Scalar>(m: &ModuleRep<S>) -> Result<(), Report> {
    let mut r = Report::new();
    if m.sign != Sign::Plus {
        r.fail("type-one", "V", "module has type -1; normalize first");
        return Err(r);
    }
    Ok(())
}

/// The decomposition `[r,s]`: eigenspaces of `x_rs` for `q^d, q^{d-2}, ..., q^{-d}`.
pub fn decomposition_rs<S: Scalar>(m: &ModuleRep<S>, g: GenIndex) -> Result<Decomposition<S>, Report> {
    require_type_one(m)?;
    let d = m.diameter as i64;
    let x = m.x(g);
    let comps: Vec<Subspace<S>> = (0..=d)
        .map(|i| eigenspace(x, &m.q.power(d - 2 * i)).expect("square"))
        .collect();
    Decomposition::new(comps).map_err(|e| {
        let mut r = Report::new();
        r.fail("decomposition", g.name(), e.to_string());
        r
    })
}

fn all_decompositions<S: Scalar>(m: &ModuleRep<S>) -> Result<Vec<Decomposition<S>>, Report> {
    GenIndex::ALL.iter().map(|&g| decomposition_rs(m, g)).collect()
}

/// Component dimensions of the decompositions `[r,s]`, checked to agree for
/// all eight generators and to be symmetric.
pub fn shape<S: Scalar>(m: &ModuleRep<S>) -> Result<Vec<usize>, Report> {
    let decs = all_decompositions(m)?;
    let mut report = Report::new();
    let reference = decs[0].shape();
    for (g, dec) in GenIndex::ALL.iter().zip(&decs).skip(1) {
        report.check(
            dec.shape() == reference,
            "shape-agrees",
            format!("{} vs {}", GenIndex::ALL[0], g),
        );
    }
    let d = reference.len() - 1;
    for i in 0..=d {
        report.check(reference[i] == reference[d - i], "shape-symmetric", format!("i={i}"));
    }
    report.into_result().map(|_| reference)
}

/// The flags `[0], [1], [2], [3]`.
///
/// Flag `[n]` is induced by `[n,n+1]`; the report fails if any of `[n,n+2]`,
/// the inversion of `[n-1,n]` or the inversion of `[n-2,n]` induces a
/// different flag, or if some ordered pair of distinct flags is not opposite.
pub fn four_flags<S: Scalar>(m: &ModuleRep<S>) -> Result<[Flag<S>; 4], Report> {
    let mut report = Report::new();
    let flags = four_flags_into(m, &mut report)?;
    report.into_result().map(|_| flags)
}

fn four_flags_into<S: Scalar>(m: &ModuleRep<S>, report: &mut Report) -> Result<[Flag<S>; 4], Report> {
    let decs = all_decompositions(m)?;
    let dec = |g: GenIndex| &decs[g.position()];
    let flags = Z4::ALL.map(|n| {
        let n = i64::from(n.value());
        dec(GenIndex::new(n, n + 1).unwrap()).induced_flag()
    });
    for g in GenIndex::ALL {
        let r = usize::from(g.r().value());
        let s = usize::from(g.s().value());
        report.check(
            dec(g).induced_flag() == flags[r],
            "flag-induced",
            format!("[{}] from {}", r, g),
        );
        report.check(
            dec(g).inverted().induced_flag() == flags[s],
            "flag-induced",
            format!("[{}] from inverted {}", s, g),
        );
    }
    for a in 0..4 {
        for b in 0..4 {
            if a == b {
                continue;
            }
            let opposite = flags_opposite(&flags[a], &flags[b]).expect("equal diameters");
            report.check(opposite.is_some(), "flags-opposite", format!("[{a}],[{b}]"));
        }
    }
    Ok(flags)
}

/// Checks that component `i` of `[r,s]` is component `i` of flag `[r]`
/// intersected with component `d-i` of flag `[s]`.
pub fn check_flag_intersection<S: Scalar>(m: &ModuleRep<S>) -> Report {
    let mut report = Report::new();
    let flags = match four_flags(m) {
        Ok(f) => f,
        Err(r) => return r,
    };
    let d = m.diameter;
    for g in GenIndex::ALL {
        let dec = match decomposition_rs(m, g) {
            Ok(dec) => dec,
            Err(r) => return r,
        };
        let fr = &flags[usize::from(g.r().value())];
        let fs = &flags[usize::from(g.s().value())];
        for i in 0..=d {
            let cap = fr.components()[i]
                .intersect(&fs.components()[d - i])
                .expect("common ambient");
            report.check(cap == *dec.component(i), "flag-intersection", format!("{g}, i={i}"));
        }
    }
    report
}

#[derive(Clone, Copy, Debug)]
enum Shift {
    /// subtract `q^{d-2i}`
    Desc,
    /// subtract `q^{2i-d}`
    Asc,
    None,
}

#[derive(Clone, Copy, Debug)]
enum Target {
    Zero,
    /// `U_{i+a} + ... + U_{i+b}`
    Near(isize, isize),
    /// `U_0 + ... + U_{i+a}`
    UpTo(isize),
    /// `U_{i+a} + ... + U_d`
    From(isize),
}

struct TableRow {
    /// 1 for `x_{r,r+1}`, 2 for `x_{r,r+2}`.
    step: i64,
    /// decomposition `[r+a, r+b]`
    dec: (i64, i64),
    shift: Shift,
    target: Target,
}

const ACTION_TABLE: [TableRow; 12] = [
    TableRow { step: 1, dec: (0, 1), shift: Shift::Desc, target: Target::Zero },
    TableRow { step: 1, dec: (1, 2), shift: Shift::Asc, target: Target::Near(-1, -1) },
    TableRow { step: 1, dec: (2, 3), shift: Shift::None, target: Target::Near(-1, 1) },
    TableRow { step: 1, dec: (3, 4), shift: Shift::Asc, target: Target::Near(1, 1) },
    TableRow { step: 1, dec: (0, 2), shift: Shift::Desc, target: Target::Near(-1, -1) },
    TableRow { step: 1, dec: (1, 3), shift: Shift::Asc, target: Target::Near(-1, -1) },
    TableRow { step: 2, dec: (0, 1), shift: Shift::Desc, target: Target::UpTo(-1) },
    TableRow { step: 2, dec: (1, 2), shift: Shift::Desc, target: Target::From(1) },
    TableRow { step: 2, dec: (2, 3), shift: Shift::Asc, target: Target::Near(-1, -1) },
    TableRow { step: 2, dec: (3, 4), shift: Shift::Asc, target: Target::Near(1, 1) },
    TableRow { step: 2, dec: (0, 2), shift: Shift::Desc, target: Target::Zero },
    TableRow { step: 2, dec: (1, 3), shift: Shift::None, target: Target::From(-1) },
];

impl TableRow {
    fn name(&self) -> String {
        let rel = |k: i64| if k == 0 { "r".to_string() } else { format!("r+{k}") };
        format!(
            "action[x(r,{}) on [{},{}]]",
            rel(self.step),
            rel(self.dec.0),
            rel(self.dec.1 % 4)
        )
    }
}

/// Number of rows in the action tables.
pub const ACTION_TABLE_ROWS: usize = ACTION_TABLE.len();

/// Checks every row of both action tables for every `r` and every `i` as an
/// exact subspace containment.
pub fn verify_action_tables<S: Scalar>(m: &ModuleRep<S>) -> Report {
    let decs = match all_decompositions(m) {
        Ok(decs) => decs,
        Err(r) => return r,
    };
    let mut report = Report::new();
    let d = m.diameter as isize;
    for row in &ACTION_TABLE {
        for r in 0..4i64 {
            let x = m.x(GenIndex::new(r, r + row.step).unwrap());
            let dec = &decs[GenIndex::new(r + row.dec.0, r + row.dec.1).unwrap().position()];
            for i in 0..=d {
                let op = match row.shift {
                    Shift::Desc => x.shifted(&m.q.power((d - 2 * i) as i64)),
                    Shift::Asc => x.shifted(&m.q.power((2 * i - d) as i64)),
                    Shift::None => x.clone(),
                };
                let target = match row.target {
                    Target::Zero => Subspace::zero(m.dim()),
                    Target::Near(a, b) => dec.sum_range(i + a, i + b),
                    Target::UpTo(a) => dec.sum_upto(i + a),
                    Target::From(a) => dec.sum_from(i + a),
                };
                let image = dec.component(i as usize).image(&op).expect("square");
                let ok = image.is_subspace_of(&target).expect("common ambient");
                report.check(ok, &row.name(), format!("r={r}, i={i}"));
            }
        }
    }
    report
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::exactmath::{parse_rational, Rational};
    use crate::linalg::Matrix;
    use crate::tetra::{GenAssignment, GenIndex};

    pub fn m(rows: &[&[&str]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| parse_rational(x).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    /// A diameter-1 module at `q = 2`, solved by hand.
    pub fn d1_module() -> GenAssignment<Rational> {
        let mats = [
            ("x01", m(&[&["1/2", "-9/4"], &["0", "2"]])),
            ("x12", m(&[&["2", "0"], &["0", "1/2"]])),
            ("x23", m(&[&["1/2", "0"], &["2", "2"]])),
            ("x30", m(&[&["-1", "-9/4"], &["2", "7/2"]])),
            ("x02", m(&[&["2", "0"], &["-1", "1/2"]])),
            ("x13", m(&[&["2", "9/8"], &["0", "1/2"]])),
            ("x20", m(&[&["1/2", "0"], &["1", "2"]])),
            ("x31", m(&[&["1/2", "-9/8"], &["0", "2"]])),
        ];
        GenAssignment::new(
            mats.into_iter()
                .map(|(n, x)| (GenIndex::from_name(n).unwrap(), x))
                .collect(),
        )
        .unwrap()
    }
}
