//! Hom-Lie and hom-Leibniz structures on `Q^n` and their axiom checkers.
//!
//! Basis indices are 0-based throughout the library; witnesses are reported as
//! 0-based tuples and rendered 1-based at the file/CLI boundary.

use crate::error::{HomkitError, Result};
use crate::exactmath::{vector, Matrix, Rational, Subspace};

/// An arbitrary bilinear map `F: Q^n × Q^n → Q^n` with an optional twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    dim: usize,
    /// `table[i * dim + j] = F(e_i, e_j)`.
    table: Vec<Vec<Rational>>,
    twist: Option<Matrix>,
}

impl BilinearMap {
    pub fn zero(dim: usize) -> Self {
        BilinearMap {
            dim,
            table: vec![vector::zeros(dim); dim * dim],
            twist: None,
        }
    }

    /// Builds `F` from `(i, j, k, c)` entries meaning `F(e_i, e_j) += c e_k`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut f = BilinearMap::zero(dim);
        for (i, j, k, c) in entries {
            for &idx in [i, j, k] {
                if idx >= dim {
                    return Err(HomkitError::DimensionMismatch {
                        context: "bilinear map index",
                        expected: dim,
                        found: idx + 1,
                    });
                }
            }
            f.table[i * dim + j][*k] += c;
        }
        Ok(f)
    }

    pub fn with_twist(mut self, twist: Matrix) -> Result<Self> {
        if twist.rows() != self.dim || twist.cols() != self.dim {
            return Err(HomkitError::DimensionMismatch {
                context: "bilinear map twist",
                expected: self.dim,
                found: twist.rows(),
            });
        }
        self.twist = Some(twist);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn twist(&self) -> Option<&Matrix> {
        self.twist.as_ref()
    }

    pub fn on_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i * self.dim + j]
    }

    pub fn set_on_basis(&mut self, i: usize, j: usize, value: Vec<Rational>) {
        assert_eq!(value.len(), self.dim);
        self.table[i * self.dim + j] = value;
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut acc = vector::zeros(self.dim);
        for (i, a) in vector::nonzeros(x) {
            for (j, b) in vector::nonzeros(y) {
                vector::axpy(&mut acc, &(a * b), self.on_basis(i, j));
            }
        }
        acc
    }

    /// First `(i, j)` with `F(e_i, e_j) != -F(e_j, e_i)`, if any.
    pub fn skew_witness(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in i..self.dim {
                let s = vector::add(self.on_basis(i, j), self.on_basis(j, i));
                if !vector::is_zero(&s) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_skew(&self) -> bool {
        self.skew_witness().is_none()
    }

    /// `ad_F(e_i)`: the matrix of `v ↦ F(e_i, v)`.
    pub fn ad(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.on_basis(i, j)[k].clone())
    }

    /// Nonzero entries `(i, j, k, c)` in lexicographic order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in vector::nonzeros(self.on_basis(i, j)) {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
        out
    }
}

/// A vector space `Q^n` with a skewsymmetric bracket and a twist `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieAlgebra {
    bracket: BilinearMap,
    alpha: Matrix,
}

impl HomLieAlgebra {
    /// Rejects structure constants that are not skewsymmetric.
    pub fn new(bracket: BilinearMap, alpha: Matrix) -> Result<Self> {
        let n = bracket.dim();
        if alpha.rows() != n || alpha.cols() != n {
            return Err(HomkitError::DimensionMismatch {
                context: "twist size",
                expected: n,
                found: alpha.rows().max(alpha.cols()),
            });
        }
        if let Some((i, j)) = bracket.skew_witness() {
            return Err(HomkitError::InvariantViolation(format!(
                "structure constants are not skewsymmetric at (e{}, e{})",
                i + 1,
                j + 1
            )));
        }
        let bracket = BilinearMap { twist: None, ..bracket };
        Ok(HomLieAlgebra { bracket, alpha })
    }

    /// Builds the algebra from `[e_i, e_j] = Σ c e_k` listed for `i < j` only.
    pub fn from_upper(dim: usize, entries: &[(usize, usize, usize, Rational)], alpha: Matrix) -> Result<Self> {
        let mut full = Vec::with_capacity(2 * entries.len());
        for (i, j, k, c) in entries {
            if i >= j {
                return Err(HomkitError::InvariantViolation(format!(
                    "bracket entries must be listed with i < j, got (e{}, e{})",
                    i + 1,
                    j + 1
                )));
            }
            full.push((*i, *j, *k, c.clone()));
            full.push((*j, *i, *k, -c));
        }
        HomLieAlgebra::new(BilinearMap::from_entries(dim, &full)?, alpha)
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn bracket_map(&self) -> &BilinearMap {
        &self.bracket
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        self.bracket.on_basis(i, j)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.bracket.apply(x, y)
    }

    /// Structure constant `c_{ij}^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.bracket.on_basis(i, j)[k]
    }

    /// Entries `(i, j, k, c)` with `i < j`, lexicographic.
    pub fn upper_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        self.bracket.entries().into_iter().filter(|(i, j, _, _)| i < j).collect()
    }

    /// The bracket viewed as a bilinear map twisted by `α`.
    pub fn as_bilinear(&self) -> BilinearMap {
        BilinearMap {
            twist: Some(self.alpha.clone()),
            ..self.bracket.clone()
        }
    }

    pub fn with_alpha(&self, alpha: Matrix) -> Result<Self> {
        HomLieAlgebra::new(self.bracket.clone(), alpha)
    }

    /// `ad_{e_i}` as a matrix.
    pub fn ad(&self, i: usize) -> Matrix {
        self.bracket.ad(i)
    }

    /// Transports the structure along an invertible change of basis `p`:
    /// the result is `x ↦ p x` made into an isomorphism.
    pub fn conjugate(&self, p: &Matrix) -> Result<Self> {
        let n = self.dim();
        let p_inv = p.inverse()?;
        let mut f = BilinearMap::zero(n);
        for i in 0..n {
            for j in 0..n {
                let x = p_inv.column(i);
                let y = p_inv.column(j);
                f.set_on_basis(i, j, p.apply(&self.bracket(&x, &y)));
            }
        }
        let alpha = &(p * &self.alpha) * &p_inv;
        HomLieAlgebra::new(f, alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieReport {
    pub is_endomorphism: bool,
    pub hom_jacobi: bool,
    /// First `(i, j)`, `i < j`, with `α[e_i, e_j] != [αe_i, αe_j]`.
    pub endomorphism_witness: Option<(usize, usize)>,
    /// First `(i, j, k)`, `i < j < k`, violating hom-Jacobi.
    pub jacobi_witness: Option<(usize, usize, usize)>,
}

impl HomLieReport {
    pub fn passed(&self) -> bool {
        self.is_endomorphism && self.hom_jacobi
    }
}

/// `α[x, y] - [αx, αy]` on basis vectors.
fn endomorphism_defect(b: &BilinearMap, alpha: &Matrix, i: usize, j: usize) -> Vec<Rational> {
    let lhs = alpha.apply(b.on_basis(i, j));
    let rhs = b.apply(&alpha.column(i), &alpha.column(j));
    vector::sub(&lhs, &rhs)
}

/// `[αx, [y, z]] + [αy, [z, x]] + [αz, [x, y]]` on basis vectors.
pub fn hom_jacobiator(b: &BilinearMap, alpha: &Matrix, i: usize, j: usize, k: usize) -> Vec<Rational> {
    let term = |a: usize, p: usize, q: usize| b.apply(&alpha.column(a), b.on_basis(p, q));
    let mut s = term(i, j, k);
    s = vector::add(&s, &term(j, k, i));
    vector::add(&s, &term(k, i, j))
}

fn check_bilinear_hom_lie(b: &BilinearMap, alpha: &Matrix) -> HomLieReport {
    let n = b.dim();
    let mut endomorphism_witness = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            if !vector::is_zero(&endomorphism_defect(b, alpha, i, j)) {
                endomorphism_witness = Some((i, j));
                break 'outer;
            }
        }
    }
    let mut jacobi_witness = None;
    'outer2: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !vector::is_zero(&hom_jacobiator(b, alpha, i, j, k)) {
                    jacobi_witness = Some((i, j, k));
                    break 'outer2;
                }
            }
        }
    }
    HomLieReport {
        is_endomorphism: endomorphism_witness.is_none(),
        hom_jacobi: jacobi_witness.is_none(),
        endomorphism_witness,
        jacobi_witness,
    }
}

/// Checks that `α` is a bracket endomorphism and the hom-Jacobi identity holds.
/// Repeated-index triples are skipped: skewsymmetry makes the hom-Jacobiator
/// totally antisymmetric, so they vanish identically.
pub fn check_hom_lie(g: &HomLieAlgebra) -> HomLieReport {
    check_bilinear_hom_lie(&g.bracket, &g.alpha)
}

/// Same sweep for a skewsymmetric bilinear map with an explicit twist.
pub fn check_hom_lie_bilinear(b: &BilinearMap, alpha: &Matrix) -> HomLieReport {
    check_bilinear_hom_lie(b, alpha)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizReport {
    pub holds: bool,
    pub witness: Option<(usize, usize, usize)>,
}

/// `[α(x),[y,z]] = [[x,y],α(z)] + [α(y),[x,z]]` on all basis triples, repeats included.
pub fn check_hom_leibniz(b: &BilinearMap) -> Result<LeibnizReport> {
    let alpha = b.twist().ok_or(HomkitError::MissingTwist)?;
    let n = b.dim();
    let cols: Vec<Vec<Rational>> = (0..n).map(|j| alpha.column(j)).collect();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = b.apply(&cols[x], b.on_basis(y, z));
                let r1 = b.apply(b.on_basis(x, y), &cols[z]);
                let r2 = b.apply(&cols[y], b.on_basis(x, z));
                if lhs != vector::add(&r1, &r2) {
                    return Ok(LeibnizReport {
                        holds: false,
                        witness: Some((x, y, z)),
                    });
                }
            }
        }
    }
    Ok(LeibnizReport {
        holds: true,
        witness: None,
    })
}

/// `ψ[x, y]_g = [ψx, ψy]_h` and `ψ ∘ α = γ ∘ ψ`.
pub fn is_morphism(psi: &Matrix, g: &HomLieAlgebra, h: &HomLieAlgebra) -> Result<bool> {
    if psi.rows() != h.dim() || psi.cols() != g.dim() {
        return Err(HomkitError::DimensionMismatch {
            context: "morphism shape",
            expected: h.dim() * g.dim(),
            found: psi.rows() * psi.cols(),
        });
    }
    if psi * g.alpha() != h.alpha() * psi {
        return Ok(false);
    }
    let cols: Vec<Vec<Rational>> = (0..g.dim()).map(|j| psi.column(j)).collect();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            if psi.apply(g.bracket_basis(i, j)) != h.bracket(&cols[i], &cols[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `α(h) ⊂ h` and `[h, h] ⊂ h`.
pub fn is_subalgebra(g: &HomLieAlgebra, h: &Subspace) -> Result<bool> {
    if h.ambient_dim() != g.dim() {
        return Err(HomkitError::DimensionMismatch {
            context: "subalgebra ambient dimension",
            expected: g.dim(),
            found: h.ambient_dim(),
        });
    }
    for b in h.basis() {
        if !h.contains(&g.alpha().apply(b))? {
            return Ok(false);
        }
    }
    for (p, x) in h.basis().iter().enumerate() {
        for y in &h.basis()[p + 1..] {
            if !h.contains(&g.bracket(x, y))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hom-Lie with an invertible twist.
pub fn is_regular(g: &HomLieAlgebra) -> bool {
    check_hom_lie(g).passed() && g.alpha().is_invertible()
}

/// Named fixtures with hand-checkable structure.
pub mod catalog {
    use super::*;
    use crate::exactmath::int;

    /// Zero bracket on `Q^n` with the given twist.
    pub fn abelian(n: usize, alpha: Matrix) -> HomLieAlgebra {
        HomLieAlgebra::new(BilinearMap::zero(n), alpha).expect("zero bracket is skew")
    }

    /// `[e1, e2] = e2`, `α = diag(1, λ)`.
    pub fn aff2(lambda: Rational) -> HomLieAlgebra {
        HomLieAlgebra::from_upper(2, &[(0, 1, 1, int(1))], Matrix::diagonal(&[int(1), lambda]))
            .expect("aff2 fixture")
    }

    /// `[e1, e2] = e3` with `α = diag(a, b, ab)`, a morphism for every `a, b`.
    pub fn heis3(a: Rational, b: Rational) -> HomLieAlgebra {
        let ab = &a * &b;
        HomLieAlgebra::from_upper(3, &[(0, 1, 2, int(1))], Matrix::diagonal(&[a, b, ab]))
            .expect("heis3 fixture")
    }

    /// `sl2` in the basis `(h, e, f)`: `[h,e]=2e`, `[h,f]=-2f`, `[e,f]=h`, `α = id`.
    pub fn sl2() -> HomLieAlgebra {
        HomLieAlgebra::from_upper(
            3,
            &[(0, 1, 1, int(2)), (0, 2, 2, int(-2)), (1, 2, 0, int(1))],
            Matrix::identity(3),
        )
        .expect("sl2 fixture")
    }

    /// `heis3` with the extra bracket `[e1, e3] = e1`; breaks (hom-)Jacobi at `(e1, e2, e3)`.
    pub fn broken_heis3(alpha: Matrix) -> HomLieAlgebra {
        HomLieAlgebra::from_upper(3, &[(0, 1, 2, int(1)), (0, 2, 0, int(1))], alpha).expect("broken heis3 fixture")
    }

    /// `aff2(λ) ⊕ Q e3` with `e3` central and `α = diag(1, λ, c)`.
    pub fn aff2_ext(lambda: Rational, c: Rational) -> HomLieAlgebra {
        HomLieAlgebra::from_upper(3, &[(0, 1, 1, int(1))], Matrix::diagonal(&[int(1), lambda, c]))
            .expect("aff2 extension fixture")
    }

    /// The fixed catalog, by name.
    pub fn named() -> Vec<(&'static str, HomLieAlgebra)> {
        use crate::exactmath::frac;
        vec![
            ("abelian1", abelian(1, Matrix::identity(1))),
            ("abelian2", abelian(2, Matrix::identity(2))),
            ("abelian3", abelian(3, Matrix::identity(3))),
            ("abelian4", abelian(4, Matrix::identity(4))),
            ("abelian3_twisted", abelian(3, Matrix::diagonal(&[int(1), int(2), int(3)]))),
            ("aff2_lambda0", aff2(int(0))),
            ("aff2_lambda1", aff2(int(1))),
            ("aff2_lambda2", aff2(int(2))),
            ("aff2_lambda-1", aff2(int(-1))),
            ("aff2_lambda1/2", aff2(frac(1, 2))),
            ("heis3", heis3(int(1), int(1))),
            ("heis3_twisted", heis3(int(1), int(2))),
            ("sl2", sl2()),
        ]
    }

    pub fn by_name(name: &str) -> Option<HomLieAlgebra> {
        named().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
    }
}
