//! Alternating multilinear forms with scalar or vector values.
//!
//! A form of degree `k` on `Q^n` with values in `Q^m` is stored densely by its
//! values on the strictly increasing index tuples `i1 < ... < ik`, enumerated in
//! lexicographic order. Normalization: `(ε^{i1} ∧ ... ∧ ε^{ik})(e_{i1}, ..., e_{ik}) = 1`.

use crate::error::{HomkitError, Result};
use crate::exactmath::{vector, Matrix, Rational};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All strictly increasing `k`-tuples from `0..n`, lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(t) = (0..k).rev().find(|&t| cur[t] < n - k + t) else {
            return out;
        };
        cur[t] += 1;
        for s in t + 1..k {
            cur[s] = cur[s - 1] + 1;
        }
    }
}

/// Position of a strictly increasing tuple in the lexicographic enumeration.
pub fn subset_rank(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut start = 0;
    for (t, &it) in tuple.iter().enumerate() {
        for v in start..it {
            rank += binomial(n - 1 - v, k - 1 - t);
        }
        start = it + 1;
    }
    rank
}

/// Sign of the permutation sorting `seq` (distinct entries).
pub fn sort_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An `(l, k)`-unshuffle: the first `l` positions (increasing) and the
/// remaining `k` positions (increasing), with the sign of the permutation.
#[derive(Clone, Debug)]
pub struct Unshuffle {
    pub first: Vec<usize>,
    pub rest: Vec<usize>,
    pub sign: i32,
}

/// All `(l, k)`-unshuffles of `0..l+k`, lexicographic over the first block.
pub fn unshuffles(l: usize, k: usize) -> Vec<Unshuffle> {
    subsets(l + k, l)
        .into_iter()
        .map(|first| {
            let rest: Vec<usize> = (0..l + k).filter(|p| !first.contains(p)).collect();
            let moved: usize = first.iter().enumerate().map(|(i, &p)| p - i).sum();
            Unshuffle {
                first,
                rest,
                sign: if moved.is_multiple_of(2) { 1 } else { -1 },
            }
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AltForm {
    degree: usize,
    source_dim: usize,
    value_dim: usize,
    coeffs: Vec<Vec<Rational>>,
}

impl AltForm {
    pub fn zero(degree: usize, source_dim: usize, value_dim: usize) -> Self {
        AltForm {
            degree,
            source_dim,
            value_dim,
            coeffs: vec![vector::zeros(value_dim); binomial(source_dim, degree)],
        }
    }

    pub fn from_coeffs(
        degree: usize,
        source_dim: usize,
        value_dim: usize,
        coeffs: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let expected = binomial(source_dim, degree);
        if coeffs.len() != expected {
            return Err(HomkitError::DimensionMismatch {
                context: "form coefficient count",
                expected,
                found: coeffs.len(),
            });
        }
        if let Some(c) = coeffs.iter().find(|c| c.len() != value_dim) {
            return Err(HomkitError::DimensionMismatch {
                context: "form value length",
                expected: value_dim,
                found: c.len(),
            });
        }
        Ok(AltForm {
            degree,
            source_dim,
            value_dim,
            coeffs,
        })
    }

    /// The scalar constant `c` as a 0-form.
    pub fn constant(source_dim: usize, c: Rational) -> Self {
        AltForm {
            degree: 0,
            source_dim,
            value_dim: 1,
            coeffs: vec![vec![c]],
        }
    }

    /// `ε^{i1} ∧ ... ∧ ε^{ik}` for a strictly increasing 0-based tuple.
    pub fn monomial(source_dim: usize, indices: &[usize]) -> Result<Self> {
        AltForm::vector_monomial(source_dim, indices, vec![Rational::one()])
    }

    /// `ε^{i1} ∧ ... ∧ ε^{ik} ⊗ value`.
    pub fn vector_monomial(source_dim: usize, indices: &[usize], value: Vec<Rational>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= source_dim) {
            return Err(HomkitError::InvariantViolation(format!(
                "monomial indices {indices:?} must be strictly increasing and below {source_dim}"
            )));
        }
        let mut f = AltForm::zero(indices.len(), source_dim, value.len());
        let r = subset_rank(source_dim, indices);
        f.coeffs[r] = value;
        Ok(f)
    }

    /// Scalar basis of `∧^k (Q^n)*` in lexicographic order.
    pub fn scalar_basis(source_dim: usize, degree: usize) -> Vec<AltForm> {
        AltForm::vector_basis(source_dim, degree, 1)
    }

    /// Basis of `V`-valued `k`-forms, ordered tuple-major then value component.
    pub fn vector_basis(source_dim: usize, degree: usize, value_dim: usize) -> Vec<AltForm> {
        let mut out = Vec::new();
        let count = binomial(source_dim, degree);
        for r in 0..count {
            for c in 0..value_dim {
                let mut f = AltForm::zero(degree, source_dim, value_dim);
                f.coeffs[r][c] = Rational::one();
                out.push(f);
            }
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    /// Value on the basis tuple `e_{i1}, ..., e_{ik}` (strictly increasing).
    pub fn coeff(&self, indices: &[usize]) -> &[Rational] {
        debug_assert_eq!(indices.len(), self.degree);
        &self.coeffs[subset_rank(self.source_dim, indices)]
    }

    pub fn set_coeff(&mut self, indices: &[usize], value: Vec<Rational>) {
        assert_eq!(value.len(), self.value_dim);
        let r = subset_rank(self.source_dim, indices);
        self.coeffs[r] = value;
    }

    /// Value on basis vectors in arbitrary order; zero on repeats.
    pub fn coeff_signed(&self, indices: &[usize]) -> Vec<Rational> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return vector::zeros(self.value_dim);
        }
        let c = self.coeff(&sorted);
        if sort_sign(indices) == 1 {
            c.to_vec()
        } else {
            vector::neg(c)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| vector::is_zero(c))
    }

    /// Scalar value of a scalar-valued form at a basis tuple.
    pub fn scalar_coeff(&self, indices: &[usize]) -> &Rational {
        debug_assert_eq!(self.value_dim, 1);
        &self.coeff(indices)[0]
    }

    /// Evaluates on `degree` vectors of length `source_dim` by multilinear expansion.
    pub fn eval(&self, args: &[Vec<Rational>]) -> Result<Vec<Rational>> {
        if args.len() != self.degree {
            return Err(HomkitError::DimensionMismatch {
                context: "form argument count",
                expected: self.degree,
                found: args.len(),
            });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.source_dim) {
            return Err(HomkitError::DimensionMismatch {
                context: "form argument length",
                expected: self.source_dim,
                found: a.len(),
            });
        }
        let refs: Vec<&[Rational]> = args.iter().map(Vec::as_slice).collect();
        Ok(self.eval_refs(&refs))
    }

    pub(crate) fn eval_refs(&self, args: &[&[Rational]]) -> Vec<Rational> {
        let mut acc = vector::zeros(self.value_dim);
        let mut picked = Vec::with_capacity(self.degree);
        self.expand(args, &mut picked, Rational::one(), &mut acc);
        acc
    }

    fn expand(&self, args: &[&[Rational]], picked: &mut Vec<usize>, weight: Rational, acc: &mut [Rational]) {
        let p = picked.len();
        if p == args.len() {
            let mut sorted = picked.clone();
            sorted.sort_unstable();
            let c = &self.coeffs[subset_rank(self.source_dim, &sorted)];
            let w = if sort_sign(picked) == 1 { weight } else { -weight };
            vector::axpy(acc, &w, c);
            return;
        }
        for (i, x) in vector::nonzeros(args[p]) {
            if picked.contains(&i) {
                continue;
            }
            picked.push(i);
            self.expand(args, picked, &weight * x, acc);
            picked.pop();
        }
    }

    /// `(α^* f)(x1, ..., xk) = f(α x1, ..., α xk)`.
    pub fn pullback(&self, alpha: &Matrix) -> Result<AltForm> {
        if alpha.rows() != self.source_dim || alpha.cols() != self.source_dim {
            return Err(HomkitError::DimensionMismatch {
                context: "pullback map",
                expected: self.source_dim,
                found: alpha.rows().max(alpha.cols()),
            });
        }
        let columns: Vec<Vec<Rational>> = (0..self.source_dim).map(|j| alpha.column(j)).collect();
        let coeffs = subsets(self.source_dim, self.degree)
            .iter()
            .map(|tuple| {
                let args: Vec<&[Rational]> = tuple.iter().map(|&i| columns[i].as_slice()).collect();
                self.eval_refs(&args)
            })
            .collect();
        Ok(AltForm { coeffs, ..self.clone_shape() })
    }

    /// Applies a linear map to the values: `(β̄ φ)(x...) = β φ(x...)`.
    pub fn map_values(&self, beta: &Matrix) -> Result<AltForm> {
        if beta.cols() != self.value_dim {
            return Err(HomkitError::DimensionMismatch {
                context: "value map",
                expected: self.value_dim,
                found: beta.cols(),
            });
        }
        Ok(AltForm {
            degree: self.degree,
            source_dim: self.source_dim,
            value_dim: beta.rows(),
            coeffs: self.coeffs.iter().map(|c| beta.apply(c)).collect(),
        })
    }

    fn clone_shape(&self) -> AltForm {
        AltForm {
            degree: self.degree,
            source_dim: self.source_dim,
            value_dim: self.value_dim,
            coeffs: Vec::new(),
        }
    }

    fn check_same_shape(&self, other: &AltForm) -> Result<()> {
        if (self.degree, self.source_dim, self.value_dim) != (other.degree, other.source_dim, other.value_dim) {
            return Err(HomkitError::DimensionMismatch {
                context: "form shape",
                expected: self.coeffs.len() * self.value_dim,
                found: other.coeffs.len() * other.value_dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &AltForm) -> Result<AltForm> {
        self.check_same_shape(other)?;
        Ok(AltForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| vector::add(a, b)).collect(),
            ..self.clone_shape()
        })
    }

    pub fn try_sub(&self, other: &AltForm) -> Result<AltForm> {
        self.check_same_shape(other)?;
        Ok(AltForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| vector::sub(a, b)).collect(),
            ..self.clone_shape()
        })
    }

    pub fn scale(&self, c: &Rational) -> AltForm {
        AltForm {
            coeffs: self.coeffs.iter().map(|v| vector::scale(v, c)).collect(),
            ..self.clone_shape()
        }
    }

    /// Flat coordinates: tuple-major, then value component.
    pub fn to_coords(&self) -> Vec<Rational> {
        self.coeffs.iter().flatten().cloned().collect()
    }

    pub fn from_coords(degree: usize, source_dim: usize, value_dim: usize, coords: &[Rational]) -> Result<AltForm> {
        let count = binomial(source_dim, degree);
        if coords.len() != count * value_dim {
            return Err(HomkitError::DimensionMismatch {
                context: "form coordinates",
                expected: count * value_dim,
                found: coords.len(),
            });
        }
        let coeffs = if value_dim == 0 {
            vec![Vec::new(); count]
        } else {
            coords.chunks(value_dim).map(<[Rational]>::to_vec).collect()
        };
        Ok(AltForm {
            degree,
            source_dim,
            value_dim,
            coeffs,
        })
    }

    /// Signed unshuffle product: `(η ⋄ φ)` where `self = η` is scalar-valued.
    fn shuffle_product(&self, phi: &AltForm) -> Result<AltForm> {
        if self.value_dim != 1 {
            return Err(HomkitError::DimensionMismatch {
                context: "scalar factor value dimension",
                expected: 1,
                found: self.value_dim,
            });
        }
        if self.source_dim != phi.source_dim {
            return Err(HomkitError::DimensionMismatch {
                context: "product source dimension",
                expected: self.source_dim,
                found: phi.source_dim,
            });
        }
        let (l, k, n) = (self.degree, phi.degree, self.source_dim);
        let mut out = AltForm::zero(l + k, n, phi.value_dim);
        if l + k > n {
            return Ok(out);
        }
        let shuffles = unshuffles(l, k);
        for (r, tuple) in subsets(n, l + k).iter().enumerate() {
            let acc = &mut out.coeffs[r];
            for sh in &shuffles {
                let first: Vec<usize> = sh.first.iter().map(|&p| tuple[p]).collect();
                let c = self.scalar_coeff(&first);
                if c.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = sh.rest.iter().map(|&p| tuple[p]).collect();
                let w = if sh.sign == 1 { c.clone() } else { -c };
                vector::axpy(acc, &w, phi.coeff(&rest));
            }
        }
        Ok(out)
    }
}

/// Pullback of a form by a linear endomorphism of the source.
pub fn pullback(f: &AltForm, alpha: &Matrix) -> Result<AltForm> {
    f.pullback(alpha)
}

/// Exterior product of two scalar-valued forms.
pub fn wedge(xi: &AltForm, eta: &AltForm) -> Result<AltForm> {
    if eta.value_dim != 1 {
        return Err(HomkitError::DimensionMismatch {
            context: "wedge value dimension",
            expected: 1,
            found: eta.value_dim,
        });
    }
    xi.shuffle_product(eta)
}

/// Module action of a scalar `l`-form on a vector-valued `k`-form.
pub fn diamond(eta: &AltForm, phi: &AltForm) -> Result<AltForm> {
    eta.shuffle_product(phi)
}
