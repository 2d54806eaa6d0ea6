//! n-plectic structures, Hamiltonian forms and their brackets, and the
//! pointwise linear theory of orthogonal complements.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::cartan::{contract_all, interior, lie_derivative, Form, MultiVector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Chart, Rational, ScalarExpr};

/// Outcome of checking that a form is n-plectic.
#[derive(Clone, Debug, Serialize)]
pub struct NplecticReport {
    pub closed: bool,
    pub dim: usize,
    pub generic_rank: usize,
    pub pointwise_ranks: Vec<usize>,
    /// A generic kernel vector `v` with `ι_v ω = 0`, printed, when one exists.
    pub kernel_witness: Option<String>,
    pub accepted: bool,
}

/// Columns `ι_{∂_j} ω` of the linear map `v ↦ ι_v ω`.
fn contraction_columns(omega: &Form) -> Result<Vec<Form>> {
    let chart = omega.chart();
    (0..chart.dim())
        .map(|j| interior(&MultiVector::coordinate(chart, j)?, omega))
        .collect()
}

/// Row index set: every tuple on which some column or extra form is supported.
fn row_tuples(cols: &[Form], extra: Option<&Form>) -> Vec<Vec<usize>> {
    let mut set = BTreeSet::new();
    for c in cols.iter().chain(extra) {
        for (idx, _) in c.terms() {
            set.insert(idx.clone());
        }
    }
    set.into_iter().collect()
}

fn symbolic_matrix(cols: &[Form], rows: &[Vec<usize>]) -> Vec<Vec<ScalarExpr>> {
    rows.iter()
        .map(|idx| cols.iter().map(|c| c.coeff(idx)).collect())
        .collect()
}

/// Certifies closedness and nondegeneracy (generic and at each sample).
pub fn check_nplectic(
    chart: &Arc<Chart>,
    omega: &Form,
    n: usize,
    samples: &[Vec<Rational>],
) -> Result<NplecticReport> {
    omega.check_chart(chart)?;
    if omega.degree() != n + 1 {
        return Err(Error::DegreeMismatch(format!(
            "an {n}-plectic form has degree {}, got {}",
            n + 1,
            omega.degree()
        )));
    }
    let dim = chart.dim();
    let closed = omega.d().is_zero();
    let cols = contraction_columns(omega)?;
    let rows = row_tuples(&cols, None);
    let m = symbolic_matrix(&cols, &rows);
    let generic_rank = linalg::rank_function_field(&m, dim);
    let kernel_witness = if generic_rank < dim {
        let ker = linalg::nullspace_function_field(&m, dim)?;
        ker.first()
            .map(|v| MultiVector::vector_field(chart, v).map(|v| v.to_string()))
            .transpose()?
    } else {
        None
    };
    let mut pointwise_ranks = Vec::new();
    for p in samples {
        if p.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "sample point of length {} on a chart of dimension {dim}",
                p.len()
            )));
        }
        let rm: Vec<Vec<Rational>> = m
            .iter()
            .map(|row| row.iter().map(|e| e.eval_at(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        pointwise_ranks.push(linalg::rank_rational(&rm, dim));
    }
    let accepted = closed && generic_rank == dim && pointwise_ranks.iter().all(|&r| r == dim);
    Ok(NplecticReport {
        closed,
        dim,
        generic_rank,
        pointwise_ranks,
        kernel_witness,
        accepted,
    })
}

/// A chart with a closed nondegenerate `(n+1)`-form.
#[derive(Clone, Debug)]
pub struct PlecticStructure {
    chart: Arc<Chart>,
    omega: Form,
    n: usize,
    columns: Vec<Form>,
    report: NplecticReport,
}

impl PlecticStructure {
    /// Validates and builds the structure; rejects forms that fail the check.
    pub fn new(chart: &Arc<Chart>, omega: Form, n: usize, samples: &[Vec<Rational>]) -> Result<Self> {
        let report = check_nplectic(chart, &omega, n, samples)?;
        if !report.accepted {
            return Err(Error::Invalid(format!(
                "form is not {n}-plectic (closed: {}, generic rank {} of {}, sample ranks {:?})",
                report.closed, report.generic_rank, report.dim, report.pointwise_ranks
            )));
        }
        let columns = contraction_columns(&omega)?;
        Ok(PlecticStructure {
            chart: chart.clone(),
            omega,
            n,
            columns,
            report,
        })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn report(&self) -> &NplecticReport {
        &self.report
    }

    /// Parses a form in this structure's chart.
    pub fn form(&self, text: &str) -> Result<Form> {
        Form::parse(text, &self.chart)
    }

    /// Solves `ι_v ω = −dα`; `None` when `α` is not Hamiltonian.
    pub fn hamiltonian_vf(&self, alpha: &Form) -> Result<Option<HamiltonianPair>> {
        alpha.check_chart(&self.chart)?;
        if alpha.degree() + 1 != self.n && !(alpha.is_zero() && self.n >= 1) {
            return Err(Error::DegreeMismatch(format!(
                "Hamiltonian forms have degree {}, got {}",
                self.n - 1,
                alpha.degree()
            )));
        }
        let rhs = alpha.d().neg();
        if rhs.is_zero() {
            return Ok(Some(HamiltonianPair {
                alpha: normalize_degree(alpha, self.n - 1),
                vf: MultiVector::zero(&self.chart, 1),
            }));
        }
        let rows = row_tuples(&self.columns, Some(&rhs));
        let a = symbolic_matrix(&self.columns, &rows);
        let b: Vec<ScalarExpr> = rows.iter().map(|idx| rhs.coeff(idx)).collect();
        let sol = linalg::solve_function_field(&a, &b)?;
        let Some(x) = sol.solution else {
            return Ok(None);
        };
        let vf = MultiVector::vector_field(&self.chart, &x)?;
        let pair = HamiltonianPair {
            alpha: alpha.clone(),
            vf,
        };
        debug_assert!(pair.verify(self).unwrap_or(false));
        Ok(Some(pair))
    }

    /// Like [`hamiltonian_vf`](Self::hamiltonian_vf) but treats a
    /// non-Hamiltonian input as an error.
    pub fn ham(&self, alpha: &Form) -> Result<HamiltonianPair> {
        self.hamiltonian_vf(alpha)?
            .ok_or_else(|| Error::Invalid(format!("`{alpha}` is not Hamiltonian")))
    }

    pub fn ham_str(&self, text: &str) -> Result<HamiltonianPair> {
        self.ham(&self.form(text)?)
    }

    /// `{a, b} = ι_{v_b} ι_{v_a} ω`.
    pub fn ham_bracket(&self, a: &HamiltonianPair, b: &HamiltonianPair) -> Result<Form> {
        contract_all(&[&a.vf, &b.vf], &self.omega)
    }

    /// The bracket together with its Hamiltonian vector field `[v_a, v_b]`.
    pub fn ham_bracket_pair(&self, a: &HamiltonianPair, b: &HamiltonianPair) -> Result<HamiltonianPair> {
        Ok(HamiltonianPair {
            alpha: normalize_degree(&self.ham_bracket(a, b)?, self.n - 1),
            vf: a.vf.schouten(&b.vf)?,
        })
    }

    /// `ι(v₁∧⋯∧v_k) ω = ι_{v_k}⋯ι_{v_1} ω`.
    pub fn contract(&self, vfs: &[&MultiVector]) -> Result<Form> {
        contract_all(vfs, &self.omega)
    }

    pub fn jacobi_defect(
        &self,
        a: &HamiltonianPair,
        b: &HamiltonianPair,
        c: &HamiltonianPair,
    ) -> Result<JacobiDefect> {
        let bc = self.ham_bracket_pair(b, c)?;
        let ab = self.ham_bracket_pair(a, b)?;
        let ac = self.ham_bracket_pair(a, c)?;
        let lhs = self
            .ham_bracket(a, &bc)?
            .sub(&self.ham_bracket(&ab, c)?)
            .sub(&self.ham_bracket(b, &ac)?);
        let rhs = self.contract(&[&a.vf, &b.vf, &c.vf])?.d().neg();
        Ok(JacobiDefect { lhs, rhs })
    }

    /// Residual `LHS − RHS` of
    /// `d ι(v₁∧⋯∧v_m) ω = (−1)^m Σ_{i<j} (−1)^{i+j} ι([v_i,v_j] ∧ v₁…v̂_i…v̂_j…v_m) ω`.
    pub fn multi_contraction_identity(&self, vfs: &[MultiVector]) -> Result<Form> {
        let m = vfs.len();
        if m < 2 {
            return Err(Error::Invalid("the identity needs at least two fields".into()));
        }
        let refs: Vec<&MultiVector> = vfs.iter().collect();
        let lhs = self.contract(&refs)?.d();
        let mut rhs = Form::zero(&self.chart, lhs.degree());
        for i in 0..m {
            for j in i + 1..m {
                let br = vfs[i].schouten(&vfs[j])?;
                let mut list: Vec<&MultiVector> = vec![&br];
                list.extend((0..m).filter(|&k| k != i && k != j).map(|k| &vfs[k]));
                let t = self.contract(&list)?;
                // 1-based (−1)^{i+j} has the parity of the 0-based indices
                rhs = if (i + j) % 2 == 0 { rhs.add(&t) } else { rhs.sub(&t) };
            }
        }
        if m % 2 == 1 {
            rhs = rhs.neg();
        }
        Ok(lhs.sub(&rhs))
    }

    /// The constant form obtained by evaluating ω at a point.
    fn omega_at(&self, point: &[Rational]) -> Result<Form> {
        let comps = self.omega.eval_at(point)?;
        Form::from_terms(
            &self.chart,
            self.omega.degree(),
            comps.into_iter().map(|(k, v)| (k, ScalarExpr::from_rational(&v))),
        )
    }

    /// `W^{⊥,k}`: vectors `v` with `ω(v, w₁, …, w_k) = 0` at `W.point` for all
    /// `w_i` in `W`.
    pub fn orth_complement(&self, w: &PointSubspace, k: usize) -> Result<PointSubspace> {
        if k == 0 || k > self.n {
            return Err(Error::Invalid(format!("k = {k} must lie in 1..={}", self.n)));
        }
        let dim = self.dim();
        w.check(dim)?;
        let om = self.omega_at(&w.point)?;
        let wfields: Vec<MultiVector> = w
            .basis
            .iter()
            .map(|b| constant_field(&self.chart, b))
            .collect::<Result<_>>()?;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for tuple in increasing_tuples(wfields.len(), k) {
            let images: Vec<Form> = (0..dim)
                .map(|j| {
                    let ej = MultiVector::coordinate(&self.chart, j)?;
                    let mut list = vec![&ej];
                    list.extend(tuple.iter().map(|&t| &wfields[t]));
                    contract_all(&list, &om)
                })
                .collect::<Result<_>>()?;
            for idx in row_tuples(&images, None) {
                rows.push(
                    images
                        .iter()
                        .map(|f| f.coeff(&idx).as_rational().expect("constant coefficient"))
                        .collect(),
                );
            }
        }
        let basis = linalg::nullspace_rational(&rows, dim);
        Ok(PointSubspace {
            point: w.point.clone(),
            basis,
        })
    }

    /// `W ⊆ W^{⊥,k}`.
    pub fn is_isotropic(&self, w: &PointSubspace, k: usize) -> Result<bool> {
        Ok(self.classify_subspace(w, k)? != SubspaceClass::None)
    }

    /// The strongest label that applies: a Lagrangian subspace is also
    /// isotropic, but is reported as [`SubspaceClass::Lagrangian`].
    pub fn classify_subspace(&self, w: &PointSubspace, k: usize) -> Result<SubspaceClass> {
        let perp = self.orth_complement(w, k)?;
        let dim = self.dim();
        let r_perp = linalg::rank_rational(&perp.basis, dim);
        let mut joint = perp.basis.clone();
        joint.extend(w.basis.iter().cloned());
        let isotropic = linalg::rank_rational(&joint, dim) == r_perp;
        Ok(if !isotropic {
            SubspaceClass::None
        } else if linalg::rank_rational(&w.basis, dim) == r_perp {
            SubspaceClass::Lagrangian
        } else {
            SubspaceClass::Isotropic
        })
    }
}

fn normalize_degree(f: &Form, degree: usize) -> Form {
    if f.is_zero() && f.degree() != degree {
        Form::zero(f.chart(), degree)
    } else {
        f.clone()
    }
}

fn constant_field(chart: &Arc<Chart>, comps: &[Rational]) -> Result<MultiVector> {
    let c: Vec<ScalarExpr> = comps.iter().map(ScalarExpr::from_rational).collect();
    MultiVector::vector_field(chart, &c)
}

/// Strictly increasing `k`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A Hamiltonian form with its Hamiltonian vector field.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianPair {
    pub alpha: Form,
    pub vf: MultiVector,
}

impl HamiltonianPair {
    /// Pairs `alpha` with `vf` without checking; see [`verify`](Self::verify).
    pub fn new_unchecked(alpha: Form, vf: MultiVector) -> Self {
        HamiltonianPair { alpha, vf }
    }

    /// Checks `dα = −ι_v ω` exactly.
    pub fn verify(&self, p: &PlecticStructure) -> Result<bool> {
        Ok(self.alpha.d().add(&interior(&self.vf, p.omega())?).is_zero())
    }

    pub fn zero(p: &PlecticStructure) -> Self {
        HamiltonianPair {
            alpha: Form::zero(p.chart(), p.n() - 1),
            vf: MultiVector::zero(p.chart(), 1),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        HamiltonianPair {
            alpha: self.alpha.add(&o.alpha),
            vf: self.vf.add(&o.vf),
        }
    }

    pub fn neg(&self) -> Self {
        HamiltonianPair {
            alpha: self.alpha.neg(),
            vf: self.vf.neg(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        HamiltonianPair {
            alpha: self.alpha.scale_rational(q),
            vf: self.vf.scale_rational(q),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.vf.is_zero()
    }

    /// `L_{v_α} ω`, which vanishes for Hamiltonian pairs.
    pub fn lie_derivative_of_omega(&self, p: &PlecticStructure) -> Result<Form> {
        lie_derivative(&self.vf, p.omega())
    }
}

/// Both sides of the Jacobi defect identity.
#[derive(Clone, Debug)]
pub struct JacobiDefect {
    /// `{a,{b,c}} − {{a,b},c} − {b,{a,c}}`.
    pub lhs: Form,
    /// `−d ι(v_a∧v_b∧v_c) ω`.
    pub rhs: Form,
}

impl JacobiDefect {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// A linear subspace of the tangent space at a rational point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSubspace {
    pub point: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

impl PointSubspace {
    pub fn new(point: Vec<Rational>, basis: Vec<Vec<Rational>>) -> Result<Self> {
        let s = PointSubspace { point, basis };
        s.check(s.point.len())?;
        Ok(s)
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.point.len() != dim || self.basis.iter().any(|b| b.len() != dim) {
            return Err(Error::DimensionMismatch("subspace vectors must match the chart".into()));
        }
        if linalg::rank_rational(&self.basis, dim) != self.basis.len() {
            return Err(Error::Invalid("subspace basis is linearly dependent".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubspaceClass {
    None,
    Isotropic,
    Lagrangian,
}
