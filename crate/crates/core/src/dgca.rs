//! The twisted differential on `Λg*` and the graded-commutative axioms it satisfies.

use crate::error::{HomkitError, Result};
use crate::exactmath::{vector, Matrix, Rational};
use crate::homlie::HomLieAlgebra;
use crate::multilinear::{binomial, subset_rank, subsets, wedge, AltForm};
use crate::report::{self, CheckItem};

/// `Σ_{i<j} (-1)^{i+j} f([x_i, x_j], αx_1, ..., x̂_i, ..., x̂_j, ..., αx_{k+1})` on basis tuples.
///
/// Works for any value dimension; the representation coboundary reuses it.
pub(crate) fn bracket_sum(g: &HomLieAlgebra, f: &AltForm) -> AltForm {
    let n = g.dim();
    let k = f.degree();
    let mut out = AltForm::zero(k + 1, n, f.value_dim());
    if k + 1 > n {
        return out;
    }
    let columns: Vec<Vec<Rational>> = (0..n).map(|j| g.alpha().column(j)).collect();
    let mut args: Vec<&[Rational]> = Vec::with_capacity(k);
    for tuple in subsets(n, k + 1) {
        let mut acc = vector::zeros(f.value_dim());
        for i in 0..=k {
            for j in i + 1..=k {
                let br = g.bracket_basis(tuple[i], tuple[j]);
                if vector::is_zero(br) {
                    continue;
                }
                args.clear();
                args.push(br);
                for (l, &t) in tuple.iter().enumerate() {
                    if l != i && l != j {
                        args.push(&columns[t]);
                    }
                }
                let val = f.eval_refs(&args);
                let sign = if (i + j) % 2 == 0 { Rational::one() } else { -Rational::one() };
                vector::axpy(&mut acc, &sign, &val);
            }
        }
        out.set_coeff(&tuple, acc);
    }
    out
}

/// The degree-one operator `d` on forms over `g`.
pub fn differential(g: &HomLieAlgebra, f: &AltForm) -> Result<AltForm> {
    if f.source_dim() != g.dim() {
        return Err(HomkitError::DimensionMismatch {
            context: "differential source dimension",
            expected: g.dim(),
            found: f.source_dim(),
        });
    }
    Ok(bracket_sum(g, f))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgcaReport {
    pub d_squared_zero: bool,
    pub commutes_with_pullback: bool,
    pub graded_leibniz: bool,
    pub d_squared_witness: Option<String>,
    pub pullback_witness: Option<String>,
    pub leibniz_witness: Option<String>,
}

impl DgcaReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.commutes_with_pullback && self.graded_leibniz
    }

    pub fn items(&self) -> Vec<CheckItem> {
        vec![
            CheckItem::new("d_squared_zero", self.d_squared_zero, self.d_squared_witness.clone()),
            CheckItem::new("commutes_with_pullback", self.commutes_with_pullback, self.pullback_witness.clone()),
            CheckItem::new("graded_leibniz", self.graded_leibniz, self.leibniz_witness.clone()),
        ]
    }
}

fn indices_of(n: usize, degree: usize) -> Vec<Vec<usize>> {
    subsets(n, degree)
}

/// First basis tuple where a form is nonzero.
fn first_nonzero(f: &AltForm) -> Option<Vec<usize>> {
    subsets(f.source_dim(), f.degree())
        .into_iter()
        .zip(f.coeffs())
        .find(|(_, c)| !vector::is_zero(c))
        .map(|(t, _)| t)
}

fn sign_scale(f: &AltForm, k: usize) -> AltForm {
    if k.is_multiple_of(2) {
        f.clone()
    } else {
        f.scale(&-Rational::one())
    }
}

/// `d² = 0`, `α^* d = d α^*` and `d(ξ∧η) = dξ∧α^*η + (-1)^k α^*ξ∧dη`, exactly on basis monomials.
pub fn check_dgca(g: &HomLieAlgebra) -> DgcaReport {
    let n = g.dim();
    let alpha = g.alpha();
    let mut d_squared_witness = None;
    let mut pullback_witness = None;
    'deg: for k in 0..=n {
        for idx in indices_of(n, k) {
            let xi = AltForm::monomial(n, &idx).expect("basis monomial");
            let dxi = bracket_sum(g, &xi);
            if d_squared_witness.is_none() {
                let dd = bracket_sum(g, &dxi);
                if let Some(t) = first_nonzero(&dd) {
                    d_squared_witness = Some(format!(
                        "d²({}) ≠ 0 at {}",
                        report::monomial(&idx),
                        report::basis_tuple("e", &t)
                    ));
                }
            }
            if pullback_witness.is_none() {
                let lhs = dxi.pullback(alpha).expect("square twist");
                let rhs = bracket_sum(g, &xi.pullback(alpha).expect("square twist"));
                let diff = lhs.try_sub(&rhs).expect("same shape");
                if let Some(t) = first_nonzero(&diff) {
                    pullback_witness = Some(format!(
                        "α*d({0}) ≠ dα*({0}) at {1}",
                        report::monomial(&idx),
                        report::basis_tuple("e", &t)
                    ));
                }
            }
            if d_squared_witness.is_some() && pullback_witness.is_some() {
                break 'deg;
            }
        }
    }
    let leibniz_witness = graded_leibniz_witness(g);
    DgcaReport {
        d_squared_zero: d_squared_witness.is_none(),
        commutes_with_pullback: pullback_witness.is_none(),
        graded_leibniz: leibniz_witness.is_none(),
        d_squared_witness,
        pullback_witness,
        leibniz_witness,
    }
}

fn graded_leibniz_witness(g: &HomLieAlgebra) -> Option<String> {
    let n = g.dim();
    let alpha = g.alpha();
    let monomials: Vec<(Vec<usize>, AltForm, AltForm, AltForm)> = (0..=n)
        .flat_map(|k| indices_of(n, k))
        .map(|idx| {
            let f = AltForm::monomial(n, &idx).expect("basis monomial");
            let df = bracket_sum(g, &f);
            let af = f.pullback(alpha).expect("square twist");
            (idx, f, df, af)
        })
        .collect();
    for (ia, a, da, aa) in &monomials {
        for (ib, b, db, ab) in &monomials {
            if ia.len() + ib.len() > n {
                continue;
            }
            let lhs = bracket_sum(g, &wedge(a, b).expect("scalar forms"));
            let r1 = wedge(da, ab).expect("scalar forms");
            let r2 = sign_scale(&wedge(aa, db).expect("scalar forms"), ia.len());
            let rhs = r1.try_add(&r2).expect("same shape");
            if lhs != rhs {
                return Some(format!("a = {}, b = {}", report::monomial(ia), report::monomial(ib)));
            }
        }
    }
    None
}

/// Generator-level data of a twisted differential graded commutative algebra on `Λ(Q^n)*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgcaData {
    source_dim: usize,
    sigma: Matrix,
    tau: Matrix,
    /// Column `k` holds the coordinates of `dε^k` in the degree-2 basis.
    d1: Matrix,
}

impl DgcaData {
    pub fn new(sigma: Matrix, tau: Matrix, d1: Matrix) -> Result<Self> {
        let n = sigma.rows();
        for (what, m) in [("sigma", &sigma), ("tau", &tau)] {
            if m.rows() != n || m.cols() != n {
                return Err(HomkitError::DimensionMismatch {
                    context: if what == "sigma" { "dgca sigma" } else { "dgca tau" },
                    expected: n,
                    found: m.rows().max(m.cols()),
                });
            }
        }
        if d1.rows() != binomial(n, 2) || d1.cols() != n {
            return Err(HomkitError::DimensionMismatch {
                context: "dgca d1 shape",
                expected: binomial(n, 2) * n,
                found: d1.rows() * d1.cols(),
            });
        }
        Ok(DgcaData { source_dim: n, sigma, tau, d1 })
    }

    /// `σ = τ = α` and `d` restricted to degree one.
    pub fn from_algebra(g: &HomLieAlgebra) -> Self {
        let n = g.dim();
        let columns: Vec<Vec<Rational>> = (0..n)
            .map(|k| {
                let e = AltForm::monomial(n, &[k]).expect("basis monomial");
                bracket_sum(g, &e).to_coords()
            })
            .collect();
        let d1 = Matrix::from_columns(binomial(n, 2), &columns).expect("column lengths agree");
        DgcaData {
            source_dim: n,
            sigma: g.alpha().clone(),
            tau: g.alpha().clone(),
            d1,
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn tau(&self) -> &Matrix {
        &self.tau
    }

    pub fn d1(&self) -> &Matrix {
        &self.d1
    }

    /// `(dε^k)(e_i, e_j)` for `i < j`.
    pub fn d1_value(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.d1[(subset_rank(self.source_dim, &[i, j]), k)]
    }
}

/// Reads the bracket off the differential, `⟨ε^k, [e_i, e_j]⟩ = -(dε^k)(e_i, e_j)`, with `α = σ`.
///
/// `τ` is not consulted; certification is left to `check_hom_lie`.
pub fn bracket_from_differential(dd: &DgcaData) -> HomLieAlgebra {
    let n = dd.source_dim;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let c = dd.d1_value(k, i, j);
                if !c.is_zero() {
                    entries.push((i, j, k, -c));
                }
            }
        }
    }
    HomLieAlgebra::from_upper(n, &entries, dd.sigma.clone()).expect("upper entries are skew by construction")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationReport {
    pub holds: bool,
    /// First failing pair of basis monomials `(a, b)`.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Tests `D(ab) = D(a)τ(b) + (-1)^{|a|} σ(a)D(b)` on every pair of basis monomials.
pub fn check_sigma_tau_derivation<D>(d: D, sigma: &Matrix, tau: &Matrix, n: usize) -> Result<DerivationReport>
where
    D: Fn(&AltForm) -> Result<AltForm>,
{
    for (m, ctx) in [(sigma, "sigma size"), (tau, "tau size")] {
        if m.rows() != n || m.cols() != n {
            return Err(HomkitError::DimensionMismatch {
                context: ctx,
                expected: n,
                found: m.rows().max(m.cols()),
            });
        }
    }
    let monomials: Vec<(Vec<usize>, AltForm)> = (0..=n)
        .flat_map(|k| subsets(n, k))
        .map(|idx| {
            let f = AltForm::monomial(n, &idx).expect("basis monomial");
            (idx, f)
        })
        .collect();
    let images: Vec<AltForm> = monomials.iter().map(|(_, f)| d(f)).collect::<Result<_>>()?;
    for (p, (ia, a)) in monomials.iter().enumerate() {
        for (q, (ib, b)) in monomials.iter().enumerate() {
            if ia.len() + ib.len() > n {
                continue;
            }
            let lhs = d(&wedge(a, b)?)?;
            let r1 = wedge(&images[p], &b.pullback(tau)?)?;
            let r2 = sign_scale(&wedge(&a.pullback(sigma)?, &images[q])?, ia.len());
            if lhs != r1.try_add(&r2)? {
                return Ok(DerivationReport {
                    holds: false,
                    witness: Some((ia.clone(), ib.clone())),
                });
            }
        }
    }
    Ok(DerivationReport {
        holds: true,
        witness: None,
    })
}

/// Basis of `C^l_α(g) = {η : α^*η = η}` among scalar `l`-forms.
pub fn invariant_forms(g: &HomLieAlgebra, l: usize) -> Vec<AltForm> {
    let n = g.dim();
    let basis = AltForm::scalar_basis(n, l);
    let size = basis.len();
    let columns: Vec<Vec<Rational>> = basis
        .iter()
        .map(|f| f.pullback(g.alpha()).expect("square twist").to_coords())
        .collect();
    let pull = Matrix::from_columns(size, &columns).expect("column lengths agree");
    let op = &pull - &Matrix::identity(size);
    op.nullspace()
        .basis()
        .iter()
        .map(|v| AltForm::from_coords(l, n, 1, v).expect("coordinate length"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{frac, int};
    use crate::homlie::catalog::*;
    use crate::homlie::check_hom_lie;

    fn catalog_all() -> Vec<HomLieAlgebra> {
        named().into_iter().map(|(_, g)| g).collect()
    }

    #[test]
    fn aff2_differential_on_generators() {
        for l in [int(1), int(2), frac(1, 2)] {
            let g = aff2(l);
            let e1 = AltForm::monomial(2, &[0]).unwrap();
            let e2 = AltForm::monomial(2, &[1]).unwrap();
            assert!(differential(&g, &e1).unwrap().is_zero());
            let expected = AltForm::monomial(2, &[0, 1]).unwrap().scale(&int(-1));
            assert_eq!(differential(&g, &e2).unwrap(), expected);
        }
    }

    #[test]
    fn abelian_differential_vanishes() {
        let g = abelian(4, Matrix::diagonal(&[int(1), int(2), int(3), int(4)]));
        for k in 0..=4 {
            for f in AltForm::scalar_basis(4, k) {
                assert!(differential(&g, &f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let f = AltForm::monomial(3, &[0]).unwrap();
        assert!(matches!(differential(&aff2(int(1)), &f), Err(HomkitError::DimensionMismatch { .. })));
    }

    #[test]
    fn catalog_satisfies_dgca() {
        for g in catalog_all() {
            let r = check_dgca(&g);
            assert!(r.passed(), "{g:?}: {r:?}");
        }
    }

    #[test]
    fn top_degree_leibniz_on_aff2() {
        let g = aff2(int(2));
        let e1 = AltForm::monomial(2, &[0]).unwrap();
        let e2 = AltForm::monomial(2, &[1]).unwrap();
        let lhs = differential(&g, &wedge(&e1, &e2).unwrap()).unwrap();
        assert_eq!(lhs.degree(), 3);
        assert!(lhs.is_zero());
        // α^*ε1 ∧ dε2 = -ε1∧ε1∧ε2 = 0 as well.
        let r = wedge(&e1.pullback(g.alpha()).unwrap(), &differential(&g, &e2).unwrap()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn broken_jacobi_breaks_d_squared() {
        let g = broken_heis3(Matrix::identity(3));
        let r = check_dgca(&g);
        assert!(!r.d_squared_zero);
        assert!(r.d_squared_witness.is_some());
        let twisted = broken_heis3(Matrix::diagonal(&[int(1), int(2), int(1)]));
        let r = check_dgca(&twisted);
        assert!(!r.d_squared_zero);
        assert!(!r.commutes_with_pullback);
    }

    #[test]
    fn round_trip_on_catalog() {
        for g in catalog_all() {
            let dd = DgcaData::from_algebra(&g);
            assert_eq!(bracket_from_differential(&dd), g);
        }
    }

    #[test]
    fn zero_differential_gives_abelian() {
        let dd = DgcaData::new(Matrix::identity(3), Matrix::identity(3), Matrix::zeros(3, 3)).unwrap();
        assert_eq!(bracket_from_differential(&dd), abelian(3, Matrix::identity(3)));
    }

    #[test]
    fn hand_built_differential() {
        // dε1 = ε1∧ε2 on n = 2 gives [e1, e2] = -e1.
        let d1 = Matrix::from_i64_rows(&[&[1, 0]]);
        let dd = DgcaData::new(Matrix::identity(2), Matrix::identity(2), d1).unwrap();
        let g = bracket_from_differential(&dd);
        assert_eq!(g.bracket_basis(0, 1), &[int(-1), int(0)][..]);
        assert!(check_hom_lie(&g).passed());
    }

    #[test]
    fn dgca_data_rejects_bad_shapes() {
        assert!(DgcaData::new(Matrix::identity(2), Matrix::identity(3), Matrix::zeros(1, 2)).is_err());
        assert!(DgcaData::new(Matrix::identity(2), Matrix::identity(2), Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn sigma_tau_examples() {
        let zero = |f: &AltForm| Ok(AltForm::zero(f.degree() + 1, f.source_dim(), 1));
        assert!(check_sigma_tau_derivation(zero, &Matrix::identity(3), &Matrix::identity(3), 3).unwrap().holds);
        for g in catalog_all() {
            let d = |f: &AltForm| differential(&g, f);
            assert!(check_sigma_tau_derivation(d, g.alpha(), g.alpha(), g.dim()).unwrap().holds);
        }
    }

    #[test]
    fn untwisted_rule_is_vacuous_in_dimension_two() {
        // Every product landing in degree 3 vanishes and d kills 2-forms, so σ = τ = id passes.
        let g = aff2(int(2));
        let d = |f: &AltForm| differential(&g, f);
        let id = Matrix::identity(2);
        assert!(check_sigma_tau_derivation(d, &id, &id, 2).unwrap().holds);
    }

    #[test]
    fn untwisted_rule_fails_with_a_central_direction() {
        // d(ε2∧ε3) = -c ε123 while dε2∧ε3 - ε2∧dε3 = -ε123.
        let g = aff2_ext(int(2), int(3));
        let d = |f: &AltForm| differential(&g, f);
        let id = Matrix::identity(3);
        let r = check_sigma_tau_derivation(d, &id, &id, 3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some((vec![1], vec![2])));
        let d = |f: &AltForm| differential(&g, f);
        assert!(check_sigma_tau_derivation(d, g.alpha(), g.alpha(), 3).unwrap().holds);
        let d = |f: &AltForm| differential(&g, f);
        assert!(check_sigma_tau_derivation(d, &id, &id, 2).is_err());
    }

    #[test]
    fn invariant_forms_of_aff2() {
        let g = aff2(int(2));
        let inv1 = invariant_forms(&g, 1);
        assert_eq!(inv1, vec![AltForm::monomial(2, &[0]).unwrap()]);
        assert!(invariant_forms(&g, 2).is_empty());
        assert_eq!(invariant_forms(&g, 0).len(), 1);
    }

    use proptest::prelude::*;

    fn candidate() -> impl Strategy<Value = HomLieAlgebra> {
        (proptest::collection::vec(-1i64..=1, 9), proptest::collection::vec(-1i64..=2, 3)).prop_map(|(xs, d)| {
            let mut entries = Vec::new();
            for (p, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
                for k in 0..3 {
                    entries.push((i, j, k, int(xs[3 * p + k])));
                }
            }
            HomLieAlgebra::from_upper(3, &entries, Matrix::diagonal(&vector::from_i64(&d))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn hom_lie_iff_dgca(g in candidate()) {
            prop_assert_eq!(check_hom_lie(&g).passed(), check_dgca(&g).passed());
        }

        #[test]
        fn differential_is_linear(a in -3i64..=3, xs in proptest::collection::vec(-3i64..=3, 6), k in 0usize..=2) {
            let g = sl2();
            let basis = AltForm::scalar_basis(3, k);
            let f1 = basis.iter().zip(&xs).fold(AltForm::zero(k, 3, 1), |acc, (b, &c)| acc.try_add(&b.scale(&int(c))).unwrap());
            let f2 = basis.iter().zip(xs.iter().rev()).fold(AltForm::zero(k, 3, 1), |acc, (b, &c)| acc.try_add(&b.scale(&int(c))).unwrap());
            let lhs = differential(&g, &f1.scale(&int(a)).try_add(&f2).unwrap()).unwrap();
            let rhs = differential(&g, &f1).unwrap().scale(&int(a)).try_add(&differential(&g, &f2).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
