//! Representations, `(gl(V), [·,·]_β, Ad_β)`, hom-cochains and the `d^s` coboundary family.

use crate::dgca::{bracket_sum, invariant_forms};
use crate::error::{HomkitError, Result};
use crate::exactmath::{vector, Matrix, Rational};
use crate::homlie::{is_morphism, is_regular, HomLieAlgebra};
use crate::multilinear::{diamond, subsets, AltForm};
use crate::report::{self, CheckItem};

/// `gl(V)` with the twisted commutator `[A,B]_β = βAβ⁻¹Bβ⁻¹ - βBβ⁻¹Aβ⁻¹` and twist `Ad_β`.
/// Basis `E_ij` in row-major order.
pub fn glv_hom_lie(beta: &Matrix) -> Result<HomLieAlgebra> {
    let m = beta.rows();
    let beta_inv = beta.inverse()?;
    let units: Vec<Matrix> = (0..m * m).map(|a| Matrix::unit(m, m, a / m, a % m)).collect();
    // βE_aβ⁻¹ and E_aβ⁻¹ are reused across every pair.
    let conj: Vec<Matrix> = units.iter().map(|e| &(beta * e) * &beta_inv).collect();
    let right: Vec<Matrix> = units.iter().map(|e| e * &beta_inv).collect();
    let mut entries = Vec::new();
    for a in 0..m * m {
        for b in a + 1..m * m {
            let br = &(&conj[a] * &right[b]) - &(&conj[b] * &right[a]);
            for (c, x) in vector::nonzeros(br.entries()) {
                entries.push((a, b, c, x.clone()));
            }
        }
    }
    let columns: Vec<Vec<Rational>> = conj.iter().map(Matrix::flatten).collect();
    let ad = Matrix::from_columns(m * m, &columns)?;
    HomLieAlgebra::from_upper(m * m, &entries, ad)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    g: HomLieAlgebra,
    v_dim: usize,
    rho: Vec<Matrix>,
    beta: Matrix,
}

impl Representation {
    pub fn new(g: HomLieAlgebra, rho: Vec<Matrix>, beta: Matrix) -> Result<Self> {
        let m = beta.rows();
        if !beta.is_square() {
            return Err(HomkitError::NotSquare {
                rows: beta.rows(),
                cols: beta.cols(),
            });
        }
        if rho.len() != g.dim() {
            return Err(HomkitError::DimensionMismatch {
                context: "number of representation matrices",
                expected: g.dim(),
                found: rho.len(),
            });
        }
        if let Some(r) = rho.iter().find(|r| r.rows() != m || r.cols() != m) {
            return Err(HomkitError::DimensionMismatch {
                context: "representation matrix size",
                expected: m,
                found: r.rows().max(r.cols()),
            });
        }
        Ok(Representation { g, v_dim: m, rho, beta })
    }

    /// `ρ = 0` on `V = Q^m`.
    pub fn trivial(g: HomLieAlgebra, beta: Matrix) -> Result<Self> {
        let m = beta.rows();
        let rho = vec![Matrix::zeros(m, m); g.dim()];
        Representation::new(g, rho, beta)
    }

    pub fn algebra(&self) -> &HomLieAlgebra {
        &self.g
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    /// `ρ(x) = Σ x_i ρ(e_i)`.
    pub fn rho_of(&self, x: &[Rational]) -> Matrix {
        let m = self.v_dim;
        let mut acc = Matrix::zeros(m, m);
        for (i, c) in vector::nonzeros(x) {
            acc = &acc + &self.rho[i].scale(c);
        }
        acc
    }

    /// The induced linear map `g → gl(V)`, columns `flatten(ρ(e_i))`.
    pub fn as_linear_map(&self) -> Matrix {
        let columns: Vec<Vec<Rational>> = self.rho.iter().map(Matrix::flatten).collect();
        Matrix::from_columns(self.v_dim * self.v_dim, &columns).expect("square representation matrices")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepReport {
    pub intertwines: bool,
    pub cocycle: bool,
    pub intertwines_witness: Option<usize>,
    pub cocycle_witness: Option<(usize, usize)>,
}

impl RepReport {
    pub fn passed(&self) -> bool {
        self.intertwines && self.cocycle
    }

    pub fn items(&self) -> Vec<CheckItem> {
        vec![
            CheckItem::new(
                "intertwines",
                self.intertwines,
                self.intertwines_witness.map(|i| report::basis_tuple("e", &[i])),
            ),
            CheckItem::new(
                "cocycle",
                self.cocycle,
                self.cocycle_witness.map(|(i, j)| report::basis_tuple("e", &[i, j])),
            ),
        ]
    }
}

/// `ρ(αx)β = βρ(x)` and `ρ([x,y])β = ρ(αx)ρ(y) - ρ(αy)ρ(x)` on basis elements.
pub fn check_representation(r: &Representation) -> RepReport {
    let g = &r.g;
    let n = g.dim();
    let rho_alpha: Vec<Matrix> = (0..n).map(|i| r.rho_of(&g.alpha().column(i))).collect();
    let intertwines_witness = (0..n).find(|&i| &rho_alpha[i] * &r.beta != &r.beta * &r.rho[i]);
    let mut cocycle_witness = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let lhs = &r.rho_of(g.bracket_basis(i, j)) * &r.beta;
            let rhs = &(&rho_alpha[i] * &r.rho[j]) - &(&rho_alpha[j] * &r.rho[i]);
            if lhs != rhs {
                cocycle_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    RepReport {
        intertwines: intertwines_witness.is_none(),
        cocycle: cocycle_witness.is_none(),
        intertwines_witness,
        cocycle_witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphismReport {
    pub is_rep: bool,
    pub is_morphism: bool,
    pub agree: bool,
}

impl RepMorphismReport {
    pub fn items(&self) -> Vec<CheckItem> {
        vec![
            CheckItem::new("is_rep", self.is_rep, None),
            CheckItem::new("is_morphism", self.is_morphism, None),
            CheckItem::new("agree", self.agree, None),
        ]
    }
}

/// Compares the representation axioms with `ρ` being a morphism into `glv_hom_lie(β)`.
pub fn rep_iff_morphism(r: &Representation) -> Result<RepMorphismReport> {
    let gl = glv_hom_lie(&r.beta)?;
    let is_morph = is_morphism(&r.as_linear_map(), &r.g, &gl)?;
    let is_rep = check_representation(r).passed();
    Ok(RepMorphismReport {
        is_rep,
        is_morphism: is_morph,
        agree: is_rep == is_morph,
    })
}

/// `ad_x y = [x, y]` with `β = α`.
pub fn adjoint_rep(g: &HomLieAlgebra) -> Result<Representation> {
    if !is_regular(g) {
        return Err(HomkitError::NotRegular);
    }
    let rho = (0..g.dim()).map(|i| g.ad(i)).collect();
    let r = Representation::new(g.clone(), rho, g.alpha().clone())?;
    let check = check_representation(&r);
    if !check.passed() {
        return Err(HomkitError::InvariantViolation(format!("adjoint map failed the representation check: {check:?}")));
    }
    Ok(r)
}

/// `φ(αx_1, ..., αx_k) = βφ(x_1, ..., x_k)`.
pub fn is_hom_cochain(r: &Representation, phi: &AltForm) -> Result<bool> {
    shape_check(r, phi)?;
    Ok(phi.pullback(r.g.alpha())? == phi.map_values(&r.beta)?)
}

fn shape_check(r: &Representation, phi: &AltForm) -> Result<()> {
    if phi.source_dim() != r.g.dim() {
        return Err(HomkitError::DimensionMismatch {
            context: "cochain source dimension",
            expected: r.g.dim(),
            found: phi.source_dim(),
        });
    }
    if phi.value_dim() != r.v_dim {
        return Err(HomkitError::DimensionMismatch {
            context: "cochain value dimension",
            expected: r.v_dim,
            found: phi.value_dim(),
        });
    }
    Ok(())
}

/// A `V`-valued form satisfying the hom-cochain compatibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCochain {
    form: AltForm,
}

impl HomCochain {
    pub fn new(r: &Representation, form: AltForm) -> Result<Self> {
        if !is_hom_cochain(r, &form)? {
            return Err(HomkitError::NotHomCochain(format!(
                "degree {} form is not compatible with α and β",
                form.degree()
            )));
        }
        Ok(HomCochain { form })
    }

    pub fn form(&self) -> &AltForm {
        &self.form
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn into_form(self) -> AltForm {
        self.form
    }
}

/// Basis of `C^k_{α,β}(g; V)`, the kernel of `ᾱ - β̄` on `V`-valued `k`-forms.
/// In degree zero `ᾱ` is the identity, so this is `ker(β - id)`.
pub fn hom_cochain_space(r: &Representation, k: usize) -> Vec<AltForm> {
    let (n, m) = (r.g.dim(), r.v_dim);
    let basis = AltForm::vector_basis(n, k, m);
    if basis.is_empty() {
        return Vec::new();
    }
    let size = basis.len();
    let columns: Vec<Vec<Rational>> = basis
        .iter()
        .map(|f| {
            let a = f.pullback(r.g.alpha()).expect("square twist");
            let b = f.map_values(&r.beta).expect("square beta");
            a.try_sub(&b).expect("same shape").to_coords()
        })
        .collect();
    let op = Matrix::from_columns(size, &columns).expect("column lengths agree");
    op.nullspace()
        .basis()
        .iter()
        .map(|v| AltForm::from_coords(k, n, m, v).expect("coordinate length"))
        .collect()
}

/// `d^s` on an arbitrary `V`-valued form, without the compatibility checks.
///
/// The exponent on `α` in the first sum is `s + degree(φ)`.
pub fn ds_raw(r: &Representation, s: usize, phi: &AltForm) -> Result<AltForm> {
    shape_check(r, phi)?;
    let g = &r.g;
    let (n, k) = (g.dim(), phi.degree());
    let mut out = bracket_sum(g, phi);
    if k + 1 > n {
        return Ok(out);
    }
    let power = g.alpha().pow((s + k) as i64)?;
    let twisted: Vec<Matrix> = (0..n).map(|j| r.rho_of(&power.column(j))).collect();
    for tuple in subsets(n, k + 1) {
        let mut acc = out.coeff(&tuple).to_vec();
        let mut rest = Vec::with_capacity(k);
        for i in 0..=k {
            rest.clear();
            rest.extend(tuple.iter().enumerate().filter(|&(l, _)| l != i).map(|(_, &t)| t));
            let v = twisted[tuple[i]].apply(phi.coeff(&rest));
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            vector::axpy(&mut acc, &sign, &v);
        }
        out.set_coeff(&tuple, acc);
    }
    Ok(out)
}

/// `d^s` on hom-cochains; the compatibility of the output is re-verified.
pub fn ds(r: &Representation, s: usize, phi: &HomCochain) -> Result<HomCochain> {
    if !is_hom_cochain(r, &phi.form)? {
        return Err(HomkitError::NotHomCochain(format!("degree {} input", phi.degree())));
    }
    let out = ds_raw(r, s, &phi.form)?;
    if !is_hom_cochain(r, &out)? {
        return Err(HomkitError::InvariantViolation(format!(
            "d^{s} of a degree {} hom-cochain is not a hom-cochain",
            phi.degree()
        )));
    }
    Ok(HomCochain { form: out })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsReport {
    pub d_squared_zero: bool,
    pub beta_compatible: bool,
    pub diamond_derivation: bool,
    pub well_defined: bool,
    pub d_squared_witness: Option<String>,
    pub beta_witness: Option<String>,
    pub diamond_witness: Option<String>,
    pub well_defined_witness: Option<String>,
}

impl DsReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.beta_compatible && self.diamond_derivation && self.well_defined
    }

    pub fn items(&self) -> Vec<CheckItem> {
        vec![
            CheckItem::new("d_squared_zero", self.d_squared_zero, self.d_squared_witness.clone()),
            CheckItem::new("beta_compatible", self.beta_compatible, self.beta_witness.clone()),
            CheckItem::new("diamond_derivation", self.diamond_derivation, self.diamond_witness.clone()),
            CheckItem::new("well_defined", self.well_defined, self.well_defined_witness.clone()),
        ]
    }
}

fn first_disagreement(a: &AltForm, b: &AltForm) -> Option<Vec<usize>> {
    subsets(a.source_dim(), a.degree())
        .into_iter()
        .zip(a.coeffs().iter().zip(b.coeffs()))
        .find(|(_, (x, y))| x != y)
        .map(|(t, _)| t)
}

fn at(tuple: &[usize]) -> String {
    report::basis_tuple("e", tuple)
}

/// The three coboundary properties and the output compatibility, on full hom-cochain bases
/// for `s ≤ s_max`, `k ≤ k_max`. Property (iii) runs over bases of `C^l_α` with `l + k ≤ n`.
pub fn check_ds_properties(r: &Representation, s_max: usize, k_max: usize) -> Result<DsReport> {
    let g = &r.g;
    let n = g.dim();
    let k_top = k_max.min(n);
    let spaces: Vec<Vec<AltForm>> = (0..=k_top).map(|k| hom_cochain_space(r, k)).collect();
    let invariant: Vec<Vec<AltForm>> = (0..=n).map(|l| invariant_forms(g, l)).collect();
    let mut rep = DsReport {
        d_squared_zero: true,
        beta_compatible: true,
        diamond_derivation: true,
        well_defined: true,
        d_squared_witness: None,
        beta_witness: None,
        diamond_witness: None,
        well_defined_witness: None,
    };
    for s in 0..=s_max {
        for (k, space) in spaces.iter().enumerate() {
            for (b, phi) in space.iter().enumerate() {
                let label = format!("s = {s}, k = {k}, basis cochain {}", b + 1);
                let d1 = ds_raw(r, s, phi)?;
                if rep.well_defined && !is_hom_cochain(r, &d1)? {
                    rep.well_defined = false;
                    rep.well_defined_witness = Some(label.clone());
                }
                if rep.d_squared_zero {
                    let d2 = ds_raw(r, s, &d1)?;
                    if let Some(t) = first_disagreement(&d2, &AltForm::zero(d2.degree(), n, r.v_dim)) {
                        rep.d_squared_zero = false;
                        rep.d_squared_witness = Some(format!("{label} at {}", at(&t)));
                    }
                }
                if rep.beta_compatible {
                    let lhs = d1.map_values(&r.beta)?;
                    let rhs = ds_raw(r, s + 1, &phi.map_values(&r.beta)?)?;
                    if let Some(t) = first_disagreement(&lhs, &rhs) {
                        rep.beta_compatible = false;
                        rep.beta_witness = Some(format!("{label} at {}", at(&t)));
                    }
                }
                if rep.diamond_derivation {
                    let phi_alpha = phi.pullback(g.alpha())?;
                    'eta: for l in 0..=n - k {
                        for (e, eta) in invariant[l].iter().enumerate() {
                            let lhs = ds_raw(r, s, &diamond(eta, phi)?)?;
                            let t1 = diamond(&bracket_sum(g, eta), &phi_alpha)?;
                            let mut t2 = diamond(eta, &ds_raw(r, s + l, phi)?)?;
                            if l % 2 == 1 {
                                t2 = t2.scale(&-Rational::one());
                            }
                            if let Some(t) = first_disagreement(&lhs, &t1.try_add(&t2)?) {
                                rep.diamond_derivation = false;
                                rep.diamond_witness =
                                    Some(format!("{label}, invariant {l}-form {} at {}", e + 1, at(&t)));
                                break 'eta;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

fn image_rank(r: &Representation, s: usize, space: &[AltForm]) -> Result<usize> {
    if space.is_empty() {
        return Ok(0);
    }
    let columns: Vec<Vec<Rational>> = space
        .iter()
        .map(|phi| ds_raw(r, s, phi).map(|f| f.to_coords()))
        .collect::<Result<_>>()?;
    let rows = columns[0].len();
    if rows == 0 {
        return Ok(0);
    }
    Ok(Matrix::from_columns(rows, &columns)?.rank())
}

/// `dim ker(d^s on C^k_{α,β}) - dim im(d^s from C^{k-1}_{α,β})`.
pub fn cohomology_dim(r: &Representation, s: usize, k: usize) -> Result<usize> {
    let check = check_representation(r);
    if !check.passed() {
        let what = if !check.intertwines { "intertwining" } else { "cocycle" };
        return Err(HomkitError::NotARepresentation(format!("{what} condition fails")));
    }
    let ck = hom_cochain_space(r, k);
    let kernel = ck.len() - image_rank(r, s, &ck)?;
    let image = if k == 0 { 0 } else { image_rank(r, s, &hom_cochain_space(r, k - 1))? };
    Ok(kernel - image)
}
