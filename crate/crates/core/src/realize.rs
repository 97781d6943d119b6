//! Exact realizations of generic types by fresh transcendentals, and
//! matrix arithmetic over the valuation ring.
//!
//! A constant series whose residue is a new tower variable realizes the
//! generic type of the valuation ring over the old tower. The `n²`-fold
//! version, a matrix of fresh variables, realizes the generic type of
//! `GL(n, O)`, so membership in that type is decided by evaluation.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff::{ResidueElem, Tower};
use crate::error::{Error, Result};
use crate::formula::{evaluate, Formula, Truth};
use crate::series::{KPoly, Precision, Series, Valuation};

/// A constant series whose residue is transcendental over `tower`.
pub fn fresh_point(tower: &Tower) -> (Tower, Series) {
    let (tower, i) = tower.fresh();
    let u = Series::constant(tower.var(i));
    (tower, u)
}

/// An `n × n` matrix over `O`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OMatrix {
    n: usize,
    entries: Vec<Series>,
}

impl OMatrix {
    /// Checks the shape and that every entry lies in `O`.
    pub fn new(n: usize, entries: Vec<Series>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            if !e.in_valuation_ring()? {
                return Err(Error::NotInValuationRing);
            }
        }
        Ok(OMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Series>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        OMatrix::new(n, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Series::one())
    }

    /// `c` times the identity; `c` must lie in `O`.
    pub fn scalar(n: usize, c: Series) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { c.clone() } else { Series::zero() })
            .collect();
        OMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Series] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.entries[i * self.n + j]
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(Series::is_exact)
    }

    pub fn add(&self, other: &OMatrix) -> Result<OMatrix> {
        same_dim(self.n, other.n)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(OMatrix { n: self.n, entries })
    }

    /// `{"n":2,"entries":[["1+t","t"],["0","1"]]}`
    pub fn to_json(&self) -> Value {
        let rows = self
            .entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        serde_json::to_value(MatrixJson { n: self.n, entries: rows }).expect("plain data")
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let m: MatrixJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::DimensionMismatch(format!("bad matrix json: {e}")))?;
        if m.entries.len() != m.n {
            return Err(Error::DimensionMismatch(format!(
                "{} rows for n = {}",
                m.entries.len(),
                m.n
            )));
        }
        let rows = m
            .entries
            .iter()
            .map(|r| r.iter().map(|s| crate::parse_series(s).map_err(Error::from)).collect())
            .collect::<Result<Vec<Vec<Series>>>>()?;
        OMatrix::from_rows(rows)
    }
}

impl fmt::Display for OMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<String>>,
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{a}x{a} against {b}x{b}")))
    }
}

pub fn mat_mul(a: &OMatrix, b: &OMatrix) -> Result<OMatrix> {
    same_dim(a.n, b.n)?;
    let n = a.n;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Series::zero();
            for k in 0..n {
                acc = &acc + &(a.get(i, k) * b.get(k, j));
            }
            entries.push(acc);
        }
    }
    Ok(OMatrix { n, entries })
}

/// Determinant by cofactor expansion; no divisions, so exact inputs give an
/// exact result.
pub fn mat_det(a: &OMatrix) -> Series {
    let cols: Vec<usize> = (0..a.n).collect();
    minor_det(a, 0, &cols)
}

// determinant of rows `row..n` restricted to `cols`
fn minor_det(a: &OMatrix, row: usize, cols: &[usize]) -> Series {
    if cols.is_empty() {
        return Series::one();
    }
    let mut acc = Series::zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = a.get(row, c);
        if e.is_exact_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * &minor_det(a, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn cofactor(a: &OMatrix, i: usize, j: usize) -> Series {
    let n = a.n;
    let entries: Vec<Series> = (0..n)
        .filter(|&r| r != i)
        .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
        .map(|(r, c)| a.get(r, c).clone())
        .collect();
    let minor = OMatrix { n: n - 1, entries };
    let d = mat_det(&minor);
    if (i + j).is_multiple_of(2) {
        d
    } else {
        -&d
    }
}

fn top_exponent(s: &Series) -> i64 {
    s.offset() + s.coeffs().len() as i64 - 1
}

/// `a / b` when both are exact, `b` is a unit, and the quotient is a
/// polynomial in `t`.
fn exact_quotient(a: &Series, b: &Series) -> Option<Series> {
    if !a.is_exact() || !b.is_exact() {
        return None;
    }
    if a.is_exact_zero() {
        return Some(Series::zero());
    }
    let terms = top_exponent(a) - top_exponent(b) + 1;
    if terms <= 0 || a.offset() < 0 {
        return None;
    }
    let q = (a * &b.inv(top_exponent(a) + 1).ok()?).truncate(terms).to_exact();
    (&q * b == *a).then_some(q)
}

/// Inverse in `GL(n, O)` via the adjugate.
///
/// An entry is exact when the division by the determinant is exact (always
/// the case for a constant determinant); otherwise it is expanded modulo
/// `t^prec`.
pub fn mat_inv(a: &OMatrix, prec: i64) -> Result<OMatrix> {
    let det = mat_det(a);
    match det.valuation() {
        Ok(Valuation::Finite(0)) => {}
        Ok(v) => return Err(Error::NotInvertibleInGl(v.to_string())),
        Err(_) => return Err(Error::NotInvertibleInGl("unknown".into())),
    }
    let det_inv = det.inv(prec)?;
    let n = a.n;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // adj[i][j] is the (j, i) cofactor
            let c = cofactor(a, j, i);
            let e = match exact_quotient(&c, &det) {
                Some(q) => q,
                None => (&c * &det_inv).truncate(prec),
            };
            entries.push(e);
        }
    }
    Ok(OMatrix { n, entries })
}

/// An `n × n` matrix over the residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueMatrix {
    n: usize,
    entries: Vec<ResidueElem>,
}

impl ResidueMatrix {
    pub fn new(n: usize, entries: Vec<ResidueElem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(ResidueMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { ResidueElem::one() } else { ResidueElem::zero() })
            .collect();
        ResidueMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[ResidueElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &ResidueElem {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &ResidueMatrix) -> Result<ResidueMatrix> {
        same_dim(self.n, other.n)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ResidueElem::zero();
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(ResidueMatrix { n, entries })
    }

    /// Row reduction to upper triangular form; returns the determinant and
    /// the reduced rows of `[self | rhs]`.
    fn eliminate(&self, rhs: Option<&ResidueMatrix>) -> (ResidueElem, Vec<Vec<ResidueElem>>) {
        let n = self.n;
        let width = if rhs.is_some() { 2 * n } else { n };
        let mut rows: Vec<Vec<ResidueElem>> = (0..n)
            .map(|i| {
                let mut r: Vec<ResidueElem> = self.entries[i * n..(i + 1) * n].to_vec();
                if let Some(b) = rhs {
                    r.extend_from_slice(&b.entries[i * n..(i + 1) * n]);
                }
                r
            })
            .collect();
        let mut det = ResidueElem::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return (ResidueElem::zero(), rows);
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot = rows[col][col].clone();
            det = &det * &pivot;
            let pinv = pivot.inv().expect("pivot is nonzero");
            for x in &mut rows[col][col..width] {
                *x = &*x * &pinv;
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row[col..width].iter_mut().zip(&pivot_row[col..width]) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        (det, rows)
    }

    pub fn det(&self) -> ResidueElem {
        self.eliminate(None).0
    }

    pub fn inverse(&self) -> Result<ResidueMatrix> {
        let (det, rows) = self.eliminate(Some(&ResidueMatrix::identity(self.n)));
        if det.is_zero() {
            return Err(Error::SingularResidueMatrix);
        }
        let entries = rows.into_iter().flat_map(|r| r[self.n..].to_vec()).collect();
        Ok(ResidueMatrix { n: self.n, entries })
    }
}

impl fmt::Display for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Entrywise residue: the homomorphism `GL(n, O) → GL(n, k)`.
pub fn res_mat(a: &OMatrix) -> Result<ResidueMatrix> {
    let entries = a.entries.iter().map(Series::residue).collect::<Result<Vec<_>>>()?;
    Ok(ResidueMatrix { n: a.n, entries })
}

/// The constant-series lift of an invertible residue matrix.
pub fn lift_mat(r: &ResidueMatrix) -> Result<OMatrix> {
    if r.det().is_zero() {
        return Err(Error::SingularResidueMatrix);
    }
    let entries = r.entries.iter().cloned().map(Series::constant).collect();
    Ok(OMatrix { n: r.n, entries })
}

/// A realization `g*` of the generic type of `GL(n, O)` over a base tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericTuple {
    /// The extended tower.
    pub tower: Tower,
    /// Entries `u_{b+1}, ..., u_{b+n²}` row-major, `b` the base length.
    pub g_star: OMatrix,
    /// Number of tower variables available to formulas.
    pub base_len: usize,
}

pub fn generic_gl(n: usize, tower: &Tower) -> (Tower, GenericTuple) {
    assert!(n >= 1, "dimension must be positive");
    let base_len = tower.len();
    let mut tower = tower.clone();
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let (next, u) = fresh_point(&tower);
        tower = next;
        entries.push(u);
    }
    let g_star = OMatrix { n, entries };
    let res = res_mat(&g_star).expect("constant entries");
    assert!(!res.det().is_zero(), "generic determinant vanished");
    let gt = GenericTuple {
        tower: tower.clone(),
        g_star,
        base_len,
    };
    (tower, gt)
}

fn decided(t: Truth) -> Result<bool> {
    t.to_bool().ok_or(Error::PrecisionExhausted(0))
}

/// Membership of `phi` in the generic type of `GL(n, O)`, by evaluation at
/// `g*`.
pub fn in_p_g(phi: &Formula, gt: &GenericTuple) -> Result<bool> {
    let leak = phi.max_tower_var();
    if leak > gt.base_len {
        return Err(Error::VariableLeak(leak));
    }
    decided(evaluate(phi, gt.g_star.entries())?)
}

/// `h·phi`, i.e. `phi(h⁻¹·x̄)` with `x̄` the matrix `x1..x{n²}` row-major.
pub fn left_translate(phi: &Formula, h: &OMatrix) -> Result<Formula> {
    if !h.is_exact() {
        return Err(Error::NotInvertibleInGl("inexact entries".into()));
    }
    let hinv = mat_inv(h, 1)?;
    if !hinv.is_exact() {
        return Err(Error::NotInvertibleInGl("no exact inverse".into()));
    }
    let n = h.n;
    let arity = phi.arity();
    if arity > n * n {
        return Err(Error::ArityMismatch {
            expected: n * n,
            got: arity,
        });
    }
    let map: Vec<KPoly> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            (0..n).fold(KPoly::zero(), |acc, k| {
                acc.add(&KPoly::var(k * n + j + 1).scale(hinv.get(i, k)))
            })
        })
        .collect();
    phi.substitute(&map)
}

/// `g* + m` for an exact `m` with entries in the maximal ideal.
pub fn perturb(gt: &GenericTuple, m: &OMatrix) -> Result<OMatrix> {
    for e in &m.entries {
        match e.valuation()? {
            Valuation::Finite(v) if v < 1 => {
                return Err(Error::ResidueChanged(v.to_string()));
            }
            _ => {}
        }
        if e.prec() != Precision::Exact {
            return Err(Error::ResidueChanged("inexact".into()));
        }
    }
    gt.g_star.add(m)
}
