//! The omni-hom-Lie algebra `gl(V) ⊕ V`, its `q`-family, Dirac structures and graphs.
//!
//! Coordinates on `gl(V) ⊕ V` are the row-major matrix entries followed by the vector,
//! `m² + m` in total.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{HomkitError, Result};
use crate::exactmath::{frac, vector, Matrix, Rational, Subspace};
use crate::homlie::{check_hom_lie, check_hom_lie_bilinear, BilinearMap, HomLieAlgebra};
use crate::report::CheckItem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniSpace {
    v_dim: usize,
    beta: Matrix,
    beta_inverse: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmniElement {
    pub a: Matrix,
    pub u: Vec<Rational>,
}

impl OmniElement {
    pub fn new(a: Matrix, u: Vec<Rational>) -> Result<Self> {
        if !a.is_square() || a.rows() != u.len() {
            return Err(HomkitError::DimensionMismatch {
                context: "omni element",
                expected: u.len(),
                found: a.rows().max(a.cols()),
            });
        }
        Ok(OmniElement { a, u })
    }

    pub fn zero(m: usize) -> Self {
        OmniElement {
            a: Matrix::zeros(m, m),
            u: vector::zeros(m),
        }
    }

    pub fn matrix(a: Matrix) -> Self {
        let m = a.rows();
        OmniElement { a, u: vector::zeros(m) }
    }

    pub fn vector(u: Vec<Rational>) -> Self {
        let m = u.len();
        OmniElement { a: Matrix::zeros(m, m), u }
    }

    pub fn v_dim(&self) -> usize {
        self.u.len()
    }

    /// The `m² + m` coordinate basis: `E_ij` row-major, then `e_k`.
    pub fn basis(m: usize) -> Vec<OmniElement> {
        (0..m * m + m).map(|c| OmniElement::unit(m, c)).collect()
    }

    pub fn unit(m: usize, c: usize) -> OmniElement {
        if c < m * m {
            OmniElement::matrix(Matrix::unit(m, m, c / m, c % m))
        } else {
            OmniElement::vector(vector::unit(m, c - m * m))
        }
    }

    pub fn coords(&self) -> Vec<Rational> {
        let mut c = self.a.flatten();
        c.extend(self.u.iter().cloned());
        c
    }

    pub fn from_coords(m: usize, coords: &[Rational]) -> Result<Self> {
        if coords.len() != m * m + m {
            return Err(HomkitError::DimensionMismatch {
                context: "omni coordinates",
                expected: m * m + m,
                found: coords.len(),
            });
        }
        let a = Matrix::from_entries(m, m, coords[..m * m].to_vec())?;
        Ok(OmniElement {
            a,
            u: coords[m * m..].to_vec(),
        })
    }

    pub fn add(&self, other: &OmniElement) -> OmniElement {
        OmniElement {
            a: &self.a + &other.a,
            u: vector::add(&self.u, &other.u),
        }
    }

    pub fn sub(&self, other: &OmniElement) -> OmniElement {
        OmniElement {
            a: &self.a - &other.a,
            u: vector::sub(&self.u, &other.u),
        }
    }

    pub fn scale(&self, c: &Rational) -> OmniElement {
        OmniElement {
            a: self.a.scale(c),
            u: vector::scale(&self.u, c),
        }
    }
}

/// Label of a coordinate basis element, 1-based: `E12` or `e2`.
pub fn basis_label(m: usize, c: usize) -> String {
    if c < m * m {
        format!("E{}{}", c / m + 1, c % m + 1)
    } else {
        format!("e{}", c - m * m + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiatorMode {
    Definitional,
    Closed,
}

/// `β^{-q}` and `β^{q}`, shared by every `q`-twisted evaluation.
#[derive(Clone, Debug)]
struct QTwist {
    p: Matrix,
    p_inv: Matrix,
}

impl OmniSpace {
    pub fn new(beta: Matrix) -> Result<Self> {
        let beta_inverse = beta.inverse()?;
        Ok(OmniSpace {
            v_dim: beta.rows(),
            beta,
            beta_inverse,
        })
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn dim(&self) -> usize {
        self.v_dim * self.v_dim + self.v_dim
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn beta_inverse(&self) -> &Matrix {
        &self.beta_inverse
    }

    fn check(&self, e: &OmniElement) -> Result<()> {
        if e.v_dim() != self.v_dim || e.a.rows() != self.v_dim {
            return Err(HomkitError::DimensionMismatch {
                context: "omni element dimension",
                expected: self.v_dim,
                found: e.v_dim(),
            });
        }
        Ok(())
    }

    fn q_twist(&self, q: i64) -> QTwist {
        QTwist {
            p: self.beta.pow(-q).expect("invertible beta"),
            p_inv: self.beta.pow(q).expect("invertible beta"),
        }
    }

    /// `Ad_β(A) = βAβ⁻¹`.
    pub fn ad_beta(&self, a: &Matrix) -> Matrix {
        &(&self.beta * a) * &self.beta_inverse
    }

    /// `[A, B]_β = βAβ⁻¹Bβ⁻¹ - βBβ⁻¹Aβ⁻¹`.
    pub fn bracket_beta(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let left = &(&self.ad_beta(a) * b) * &self.beta_inverse;
        let right = &(&self.ad_beta(b) * a) * &self.beta_inverse;
        &left - &right
    }

    /// `δ_β(A + u) = Ad_β(A) + βu`.
    pub fn delta(&self, e: &OmniElement) -> OmniElement {
        OmniElement {
            a: self.ad_beta(&e.a),
            u: self.beta.apply(&e.u),
        }
    }

    pub fn delta_inverse(&self, e: &OmniElement) -> OmniElement {
        OmniElement {
            a: &(&self.beta_inverse * &e.a) * &self.beta,
            u: self.beta_inverse.apply(&e.u),
        }
    }

    fn bracket_with(&self, t: &QTwist, x: &OmniElement, y: &OmniElement) -> OmniElement {
        let twisted = &(&t.p * &x.a) * &t.p_inv;
        OmniElement {
            a: self.bracket_beta(&x.a, &y.a),
            u: twisted.apply(&y.u),
        }
    }

    fn pairing_with(&self, t: &QTwist, x: &OmniElement, y: &OmniElement) -> Vec<Rational> {
        let ax = &(&t.p * &x.a) * &t.p_inv;
        let ay = &(&t.p * &y.a) * &t.p_inv;
        vector::scale(&vector::add(&ax.apply(&y.u), &ay.apply(&x.u)), &frac(1, 2))
    }

    /// `{A+u, B+v}^q = [A,B]_β + Ad_{β^{-q}}(A)(v)`; `u` does not enter.
    pub fn bracket_q(&self, x: &OmniElement, y: &OmniElement, q: i64) -> Result<OmniElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket_with(&self.q_twist(q), x, y))
    }

    /// `⟨A+u, B+v⟩^q = ½(Ad_{β^{-q}}(A)(v) + Ad_{β^{-q}}(B)(u))`.
    pub fn pairing_q(&self, x: &OmniElement, y: &OmniElement, q: i64) -> Result<Vec<Rational>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.pairing_with(&self.q_twist(q), x, y))
    }

    pub fn bracket(&self, x: &OmniElement, y: &OmniElement) -> OmniElement {
        self.bracket_with(&self.q_twist(0), x, y)
    }

    pub fn pairing(&self, x: &OmniElement, y: &OmniElement) -> Vec<Rational> {
        self.pairing_with(&self.q_twist(0), x, y)
    }

    /// `⟦A+u, B+v⟧ = [A,B]_β + ½(A(v) - B(u))`.
    pub fn skew_bracket(&self, x: &OmniElement, y: &OmniElement) -> OmniElement {
        OmniElement {
            a: self.bracket_beta(&x.a, &y.a),
            u: vector::scale(&vector::sub(&x.a.apply(&y.u), &y.a.apply(&x.u)), &frac(1, 2)),
        }
    }

    /// Cyclic sum of `⟦δx, ⟦y, z⟧⟧`, returned in full (its matrix part vanishes).
    pub fn jacobiator_element(&self, x: &OmniElement, y: &OmniElement, z: &OmniElement) -> OmniElement {
        let term = |a: &OmniElement, b: &OmniElement, c: &OmniElement| self.skew_bracket(&self.delta(a), &self.skew_bracket(b, c));
        term(x, y, z).add(&term(y, z, x)).add(&term(z, x, y))
    }

    /// The `V`-valued Jacobiator of the skew bracket.
    pub fn jacobiator(&self, x: &OmniElement, y: &OmniElement, z: &OmniElement, mode: JacobiatorMode) -> Vec<Rational> {
        match mode {
            JacobiatorMode::Definitional => self.jacobiator_element(x, y, z).u,
            JacobiatorMode::Closed => {
                let (a, b, c) = (&x.a, &y.a, &z.a);
                let (u, v, w) = (&x.u, &y.u, &z.u);
                let conj = |m: &Matrix, n: &Matrix, t: &[Rational]| (&self.ad_beta(m) * n).apply(t);
                let mut acc = conj(c, b, u);
                acc = vector::sub(&acc, &conj(b, c, u));
                acc = vector::add(&acc, &conj(a, c, v));
                acc = vector::sub(&acc, &conj(c, a, v));
                acc = vector::add(&acc, &conj(b, a, w));
                acc = vector::sub(&acc, &conj(a, b, w));
                vector::scale(&acc, &frac(1, 4))
            }
        }
    }

    pub fn random_element(&self, rng: &mut impl Rng, bound: i64) -> OmniElement {
        let coords: Vec<Rational> = (0..self.dim()).map(|_| Rational::from(rng.random_range(-bound..=bound))).collect();
        OmniElement::from_coords(self.v_dim, &coords).expect("coordinate count")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniReport {
    pub automorphism: bool,
    pub hom_leibniz: bool,
    pub pairing_compatible: bool,
    pub automorphism_witness: Option<String>,
    pub hom_leibniz_witness: Option<String>,
    pub pairing_witness: Option<String>,
}

impl OmniReport {
    pub fn passed(&self) -> bool {
        self.automorphism && self.hom_leibniz && self.pairing_compatible
    }

    pub fn items(&self) -> Vec<CheckItem> {
        vec![
            CheckItem::new("automorphism", self.automorphism, self.automorphism_witness.clone()),
            CheckItem::new("hom_leibniz", self.hom_leibniz, self.hom_leibniz_witness.clone()),
            CheckItem::new("pairing_compatible", self.pairing_compatible, self.pairing_witness.clone()),
        ]
    }
}

/// `δ{x,y} = {δx,δy}`, `{δx,{y,z}} = {{x,y},δz} + {δy,{x,z}}` and `β⟨x,y⟩ = ⟨δx,δy⟩`
/// for the `q`-twisted structure, on all basis pairs/triples plus `trials` random triples.
pub fn check_omni_axioms(s: &OmniSpace, q: i64, trials: usize, seed: u64) -> OmniReport {
    let m = s.v_dim;
    let t = s.q_twist(q);
    let basis = OmniElement::basis(m);
    let deltas: Vec<OmniElement> = basis.iter().map(|e| s.delta(e)).collect();
    let mut report = OmniReport {
        automorphism: true,
        hom_leibniz: true,
        pairing_compatible: true,
        automorphism_witness: None,
        hom_leibniz_witness: None,
        pairing_witness: None,
    };
    let label = |idx: &[usize]| {
        let parts: Vec<String> = idx.iter().map(|&c| basis_label(m, c)).collect();
        format!("({})", parts.join(", "))
    };
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            if report.automorphism {
                let lhs = s.delta(&s.bracket_with(&t, x, y));
                if lhs != s.bracket_with(&t, &deltas[i], &deltas[j]) {
                    report.automorphism = false;
                    report.automorphism_witness = Some(label(&[i, j]));
                }
            }
            if report.pairing_compatible {
                let lhs = s.beta.apply(&s.pairing_with(&t, x, y));
                if lhs != s.pairing_with(&t, &deltas[i], &deltas[j]) {
                    report.pairing_compatible = false;
                    report.pairing_witness = Some(label(&[i, j]));
                }
            }
            if !report.hom_leibniz {
                continue;
            }
            let xy = s.bracket_with(&t, x, y);
            for (k, z) in basis.iter().enumerate() {
                if !leibniz_holds(s, &t, (x, &deltas[i]), (y, &deltas[j]), (z, &deltas[k]), &xy) {
                    report.hom_leibniz = false;
                    report.hom_leibniz_witness = Some(label(&[i, j, k]));
                    break;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let x = s.random_element(&mut rng, 3);
        let y = s.random_element(&mut rng, 3);
        let z = s.random_element(&mut rng, 3);
        let (dx, dy, dz) = (s.delta(&x), s.delta(&y), s.delta(&z));
        let w = || Some(format!("random trial {}", trial + 1));
        if report.automorphism && s.delta(&s.bracket_with(&t, &x, &y)) != s.bracket_with(&t, &dx, &dy) {
            report.automorphism = false;
            report.automorphism_witness = w();
        }
        if report.pairing_compatible && s.beta.apply(&s.pairing_with(&t, &x, &y)) != s.pairing_with(&t, &dx, &dy) {
            report.pairing_compatible = false;
            report.pairing_witness = w();
        }
        let xy = s.bracket_with(&t, &x, &y);
        if report.hom_leibniz && !leibniz_holds(s, &t, (&x, &dx), (&y, &dy), (&z, &dz), &xy) {
            report.hom_leibniz = false;
            report.hom_leibniz_witness = w();
        }
    }
    report
}

fn leibniz_holds(
    s: &OmniSpace,
    t: &QTwist,
    (_x, dx): (&OmniElement, &OmniElement),
    (y, dy): (&OmniElement, &OmniElement),
    (z, dz): (&OmniElement, &OmniElement),
    xy: &OmniElement,
) -> bool {
    let lhs = s.bracket_with(t, dx, &s.bracket_with(t, y, z));
    let r1 = s.bracket_with(t, xy, dz);
    let r2 = s.bracket_with(t, dy, &s.bracket_with(t, _x, z));
    lhs == r1.add(&r2)
}

/// A linearly independent family in `gl(V) ⊕ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniSubspace {
    space: OmniSpace,
    basis: Vec<OmniElement>,
    coords: Subspace,
}

impl OmniSubspace {
    pub fn new(space: OmniSpace, basis: Vec<OmniElement>) -> Result<Self> {
        for e in &basis {
            space.check(e)?;
        }
        let vectors: Vec<Vec<Rational>> = basis.iter().map(OmniElement::coords).collect();
        let coords = Subspace::with_basis(space.dim(), vectors)
            .map_err(|_| HomkitError::InvariantViolation("subspace basis is linearly dependent".into()))?;
        Ok(OmniSubspace { space, basis, coords })
    }

    pub fn space(&self) -> &OmniSpace {
        &self.space
    }

    pub fn basis(&self) -> &[OmniElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, e: &OmniElement) -> bool {
        self.coords.contains(&e.coords()).expect("matching ambient dimension")
    }

    /// Coordinates of `e` in the stored basis, if `e` lies in the subspace.
    pub fn coordinates(&self, e: &OmniElement) -> Option<Vec<Rational>> {
        self.coords.coordinates(&e.coords()).expect("matching ambient dimension")
    }

    /// `L^⊥ = {e : ⟨e, l⟩ = 0 for all l ∈ L}` for the untwisted pairing.
    pub fn perp(&self) -> Subspace {
        let s = &self.space;
        let n = s.dim();
        let m = s.v_dim;
        let basis = OmniElement::basis(m);
        let mut rows = Vec::with_capacity(self.basis.len() * m);
        for l in &self.basis {
            let images: Vec<Vec<Rational>> = basis.iter().map(|e| s.pairing(e, l)).collect();
            for comp in 0..m {
                rows.push((0..n).map(|c| images[c][comp].clone()).collect::<Vec<_>>());
            }
        }
        if rows.is_empty() {
            return Subspace::whole(n);
        }
        Matrix::from_rows(rows).expect("uniform row length").nullspace()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracReport {
    pub isotropic: bool,
    pub maximal: bool,
    pub invariant: bool,
    pub closed: bool,
    pub isotropic_witness: Option<(usize, usize)>,
    pub invariant_witness: Option<usize>,
    pub closed_witness: Option<(usize, usize)>,
    /// `dim L^⊥`, reported when maximality fails.
    pub perp_dim: usize,
}

impl DiracReport {
    pub fn passed(&self) -> bool {
        self.isotropic && self.maximal && self.invariant && self.closed
    }

    pub fn items(&self) -> Vec<CheckItem> {
        let pair = |p: Option<(usize, usize)>| p.map(|(i, j)| format!("(l{}, l{})", i + 1, j + 1));
        vec![
            CheckItem::new("isotropic", self.isotropic, pair(self.isotropic_witness)),
            CheckItem::new(
                "maximal",
                self.maximal,
                (!self.maximal).then(|| format!("dim L^perp = {}", self.perp_dim)),
            ),
            CheckItem::new("invariant", self.invariant, self.invariant_witness.map(|i| format!("l{}", i + 1))),
            CheckItem::new("closed", self.closed, pair(self.closed_witness)),
        ]
    }
}

pub fn check_dirac(l: &OmniSubspace) -> DiracReport {
    let s = &l.space;
    let b = &l.basis;
    let mut isotropic_witness = None;
    let mut closed_witness = None;
    for i in 0..b.len() {
        for j in 0..b.len() {
            if isotropic_witness.is_none() && j >= i && !vector::is_zero(&s.pairing(&b[i], &b[j])) {
                isotropic_witness = Some((i, j));
            }
            if closed_witness.is_none() && !l.contains(&s.bracket(&b[i], &b[j])) {
                closed_witness = Some((i, j));
            }
        }
    }
    let invariant_witness = (0..b.len()).find(|&i| !l.contains(&s.delta(&b[i])));
    let perp = l.perp();
    let maximal = perp.same_as(&l.coords).expect("matching ambient dimension");
    DiracReport {
        isotropic: isotropic_witness.is_none(),
        maximal,
        invariant: invariant_witness.is_none(),
        closed: closed_witness.is_none(),
        isotropic_witness,
        invariant_witness,
        closed_witness,
        perp_dim: perp.dim(),
    }
}

/// `{ad_F(e_i) + e_i}`, where `ad_F(e_i)` is the matrix of `v ↦ F(e_i, v)`.
pub fn graph_of(f: &BilinearMap, s: &OmniSpace) -> Result<OmniSubspace> {
    if f.dim() != s.v_dim {
        return Err(HomkitError::DimensionMismatch {
            context: "graph bilinear map",
            expected: s.v_dim,
            found: f.dim(),
        });
    }
    let basis = (0..f.dim())
        .map(|i| OmniElement {
            a: f.ad(i),
            u: vector::unit(f.dim(), i),
        })
        .collect();
    OmniSubspace::new(s.clone(), basis)
}

/// The restricted bracket and twist on a Dirac structure, in its basis coordinates.
pub fn dirac_to_homlie(l: &OmniSubspace) -> Result<HomLieAlgebra> {
    let rep = check_dirac(l);
    if !rep.passed() {
        let failing: Vec<String> = rep.items().into_iter().filter(|i| !i.passed).map(|i| i.name).collect();
        return Err(HomkitError::NotDirac(failing.join(", ")));
    }
    let s = &l.space;
    let k = l.dim();
    let mut f = BilinearMap::zero(k);
    for i in 0..k {
        for j in 0..k {
            let c = l.coordinates(&s.bracket(&l.basis[i], &l.basis[j])).expect("closed");
            f.set_on_basis(i, j, c);
        }
    }
    let columns: Vec<Vec<Rational>> = l.basis.iter().map(|e| l.coordinates(&s.delta(e)).expect("invariant")).collect();
    let twist = Matrix::from_columns(k, &columns)?;
    let g = HomLieAlgebra::new(f, twist)?;
    if !check_hom_lie(&g).passed() {
        return Err(HomkitError::InvariantViolation("restricted bracket fails the hom-Lie check".into()));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm1Report {
    pub f_is_regular_homlie: bool,
    pub graph_is_dirac: bool,
    pub agree: bool,
    pub skew: bool,
    pub is_endomorphism: bool,
    pub hom_jacobi: bool,
    pub dirac: DiracReport,
}

impl Thm1Report {
    pub fn items(&self) -> Vec<CheckItem> {
        let mut items = vec![
            CheckItem::new("f_is_regular_homlie", self.f_is_regular_homlie, None),
            CheckItem::new("graph_is_dirac", self.graph_is_dirac, None),
            CheckItem::new("agree", self.agree, None),
        ];
        items[0].witness = (!self.f_is_regular_homlie).then(|| {
            let mut why = Vec::new();
            if !self.skew {
                why.push("not skewsymmetric");
            }
            if !self.is_endomorphism {
                why.push("beta not an endomorphism");
            }
            if !self.hom_jacobi {
                why.push("hom-Jacobi fails");
            }
            why.join(", ")
        });
        items[1].witness = (!self.graph_is_dirac).then(|| {
            self.dirac
                .items()
                .into_iter()
                .filter(|i| !i.passed)
                .map(|i| i.name)
                .collect::<Vec<_>>()
                .join(", ")
        });
        items
    }
}

/// `(V, F, β)` is a regular hom-Lie algebra exactly when the graph of `ad_F` is Dirac.
pub fn thm1_equivalence(f: &BilinearMap, beta: &Matrix) -> Result<Thm1Report> {
    let s = OmniSpace::new(beta.clone())?;
    let l = graph_of(f, &s)?;
    let skew = f.is_skew();
    let hl = check_hom_lie_bilinear(f, beta);
    let f_is_regular_homlie = skew && hl.passed();
    let dirac = check_dirac(&l);
    let graph_is_dirac = dirac.passed();
    Ok(Thm1Report {
        f_is_regular_homlie,
        graph_is_dirac,
        agree: f_is_regular_homlie == graph_is_dirac,
        skew,
        is_endomorphism: hl.is_endomorphism,
        hom_jacobi: hl.hom_jacobi,
        dirac,
    })
}
