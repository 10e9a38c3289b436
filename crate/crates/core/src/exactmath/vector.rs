//! Free functions on coordinate vectors (`[Rational]`).

use super::rational::Rational;

pub fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn from_i64(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| Rational::from_integer(x)).collect()
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

/// `acc += c * v`, skipping zero work.
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Indices and values of the nonzero coordinates.
pub fn nonzeros(v: &[Rational]) -> impl Iterator<Item = (usize, &Rational)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero())
}
