//! Hom-Lie 2-algebras on a 2-term complex `V1 → V0` and the one induced by the omni structure.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{HomkitError, Result};
use crate::exactmath::{frac, vector, Matrix, Rational};
use crate::homlie::HomLieAlgebra;
use crate::multilinear::{subsets, AltForm};
use crate::omni::{JacobiatorMode, OmniElement, OmniSpace};
use crate::report::{basis_tuple, CheckItem, CheckReport};

/// `l2` on `V0 × V1` is stored as `l2_01`; `l2(m, x) = -l2_01(x, m)` and `l2(m, n) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLie2Data {
    dim1: usize,
    dim0: usize,
    dee: Matrix,
    l2_00: AltForm,
    /// `l2_01[i]` is the matrix of `m ↦ l2(e_i, m)`.
    l2_01: Vec<Matrix>,
    l3: AltForm,
    phi0: Matrix,
    phi1: Matrix,
}

fn shape(context: &'static str, expected: usize, found: usize) -> HomkitError {
    HomkitError::DimensionMismatch { context, expected, found }
}

impl HomLie2Data {
    pub fn new(
        dee: Matrix,
        l2_00: AltForm,
        l2_01: Vec<Matrix>,
        l3: AltForm,
        phi0: Matrix,
        phi1: Matrix,
    ) -> Result<Self> {
        let (dim0, dim1) = (dee.rows(), dee.cols());
        if phi0.rows() != dim0 || phi0.cols() != dim0 {
            return Err(shape("phi0 size", dim0, phi0.rows().max(phi0.cols())));
        }
        if phi1.rows() != dim1 || phi1.cols() != dim1 {
            return Err(shape("phi1 size", dim1, phi1.rows().max(phi1.cols())));
        }
        if l2_00.degree() != 2 || l2_00.source_dim() != dim0 || l2_00.value_dim() != dim0 {
            return Err(shape("l2 on V0 x V0", dim0, l2_00.source_dim()));
        }
        if l2_01.len() != dim0 {
            return Err(shape("l2 on V0 x V1", dim0, l2_01.len()));
        }
        if let Some(m) = l2_01.iter().find(|m| m.rows() != dim1 || m.cols() != dim1) {
            return Err(shape("l2 on V0 x V1 block", dim1, m.rows().max(m.cols())));
        }
        if l3.degree() != 3 || l3.source_dim() != dim0 || l3.value_dim() != dim1 {
            return Err(shape("l3", dim0, l3.source_dim()));
        }
        Ok(HomLie2Data {
            dim1,
            dim0,
            dee,
            l2_00,
            l2_01,
            l3,
            phi0,
            phi1,
        })
    }

    /// A hom-Lie algebra as the complex `0 → g`.
    pub fn from_hom_lie(g: &HomLieAlgebra) -> Self {
        let n = g.dim();
        let mut l2 = AltForm::zero(2, n, n);
        for t in subsets(n, 2) {
            l2.set_coeff(&t, g.bracket_basis(t[0], t[1]).to_vec());
        }
        HomLie2Data {
            dim1: 0,
            dim0: n,
            dee: Matrix::zeros(n, 0),
            l2_00: l2,
            l2_01: vec![Matrix::zeros(0, 0); n],
            l3: AltForm::zero(3, n, 0),
            phi0: g.alpha().clone(),
            phi1: Matrix::zeros(0, 0),
        }
    }

    pub fn dim0(&self) -> usize {
        self.dim0
    }

    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn dee(&self) -> &Matrix {
        &self.dee
    }

    pub fn l2_00(&self) -> &AltForm {
        &self.l2_00
    }

    pub fn l2_01(&self) -> &[Matrix] {
        &self.l2_01
    }

    pub fn l3(&self) -> &AltForm {
        &self.l3
    }

    pub fn phi0(&self) -> &Matrix {
        &self.phi0
    }

    pub fn phi1(&self) -> &Matrix {
        &self.phi1
    }

    /// `l2(x, y)` for `x, y ∈ V0`.
    pub fn bracket00(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.l2_00.eval_refs(&[x, y])
    }

    /// `l2(x, m)` for `x ∈ V0`, `m ∈ V1`.
    pub fn bracket01(&self, x: &[Rational], m: &[Rational]) -> Vec<Rational> {
        let mut acc = vector::zeros(self.dim1);
        for (i, c) in vector::nonzeros(x) {
            vector::axpy(&mut acc, c, &self.l2_01[i].apply(m));
        }
        acc
    }

    pub fn trilinear(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        self.l3.eval_refs(&[x, y, z])
    }
}

/// `V = Q^m → gl(V) ⊕ V` with the skew bracket, `½A(w)`, the Jacobiator, `δ_β` and `β`.
pub fn from_omni(s: &OmniSpace) -> HomLie2Data {
    let m = s.v_dim();
    let n = s.dim();
    let basis = OmniElement::basis(m);
    let dee = Matrix::from_fn(n, m, |r, c| if r == m * m + c { Rational::one() } else { Rational::zero() });
    let mut l2 = AltForm::zero(2, n, n);
    for t in subsets(n, 2) {
        l2.set_coeff(&t, s.skew_bracket(&basis[t[0]], &basis[t[1]]).coords());
    }
    let l2_01 = basis.iter().map(|e| e.a.scale(&frac(1, 2))).collect();
    let mut l3 = AltForm::zero(3, n, m);
    for t in subsets(n, 3) {
        l3.set_coeff(&t, s.jacobiator(&basis[t[0]], &basis[t[1]], &basis[t[2]], JacobiatorMode::Closed));
    }
    let columns: Vec<Vec<Rational>> = basis.iter().map(|e| s.delta(e).coords()).collect();
    let phi0 = Matrix::from_columns(n, &columns).expect("column lengths agree");
    HomLie2Data {
        dim1: m,
        dim0: n,
        dee,
        l2_00: l2,
        l2_01,
        l3,
        phi0,
        phi1: s.beta().clone(),
    }
}

/// How the ten-term identity (j) is swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    /// Random basis quadruples from a seeded generator.
    Sampled { samples: usize, seed: u64 },
}

const AXIOMS: [&str; 10] = [
    "a_l2_skew",
    "b_l2_mixed_skew",
    "c_l2_v1_zero",
    "d_dee_equivariant",
    "e_dee_symmetric",
    "f_phi0_morphism",
    "g_phi1_equivariant",
    "h_jacobiator_v0",
    "i_jacobiator_v1",
    "j_ten_term",
];

struct Tables {
    e0: Vec<Vec<Rational>>,
    e1: Vec<Vec<Rational>>,
    phi0_cols: Vec<Vec<Rational>>,
    dee_cols: Vec<Vec<Rational>>,
    /// `l2(e_a, e_b)`.
    br: Vec<Vec<Vec<Rational>>>,
}

fn tables(d: &HomLie2Data) -> Tables {
    let (n0, n1) = (d.dim0, d.dim1);
    let e0: Vec<Vec<Rational>> = (0..n0).map(|i| vector::unit(n0, i)).collect();
    let e1: Vec<Vec<Rational>> = (0..n1).map(|i| vector::unit(n1, i)).collect();
    let br = (0..n0)
        .map(|a| (0..n0).map(|b| d.l2_00.coeff_signed(&[a, b])).collect())
        .collect();
    Tables {
        phi0_cols: (0..n0).map(|j| d.phi0.column(j)).collect(),
        dee_cols: (0..n1).map(|j| d.dee.column(j)).collect(),
        e0,
        e1,
        br,
    }
}

fn first<I: Iterator<Item = Vec<usize>>>(mut it: I, pred: impl Fn(&[usize]) -> bool, prefixes: &[&str]) -> Option<String> {
    it.find(|t| !pred(t)).map(|t| {
        let parts: Vec<String> = t
            .iter()
            .zip(prefixes)
            .map(|(i, p)| format!("{p}{}", i + 1))
            .collect();
        format!("({})", parts.join(", "))
    })
}

fn pairs(a: usize, b: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..a).flat_map(move |i| (0..b).map(move |j| vec![i, j]))
}

fn triples(a: usize, b: usize, c: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..a).flat_map(move |i| (0..b).flat_map(move |j| (0..c).map(move |k| vec![i, j, k])))
}

/// Every axiom of the definition, each reported with its first failing basis tuple.
///
/// (a), (b), (c) hold by construction of the data type. (i) is compared in `V1`:
/// `l3(x, y, dm) = l2(φ0x, l2(y, m)) + l2(φ0y, l2(m, x)) + l2(φ1m, l2(x, y))`.
pub fn check_homlie2(d: &HomLie2Data, mode: SweepMode) -> CheckReport {
    let (n0, n1) = (d.dim0, d.dim1);
    let t = tables(d);
    let mut report = CheckReport::new("homlie2");

    let bullet1 = first(
        (0..n1).map(|i| vec![i]),
        |v| d.phi0.apply(&t.dee_cols[v[0]]) == d.dee.apply(&d.phi1.column(v[0])),
        &["m"],
    );
    report.push(CheckItem::new("phi0_dee_commute", bullet1.is_none(), bullet1));
    let bullet2 = first(
        subsets(n0, 3).into_iter(),
        |v| {
            let lhs = d.trilinear(&t.phi0_cols[v[0]], &t.phi0_cols[v[1]], &t.phi0_cols[v[2]]);
            lhs == d.phi1.apply(d.l3.coeff(v))
        },
        &["x", "y", "z"],
    );
    report.push(CheckItem::new("l3_equivariant", bullet2.is_none(), bullet2));

    for name in &AXIOMS[..3] {
        report.push(CheckItem::pass(*name));
    }

    let dd = first(
        pairs(n0, n1),
        |v| {
            let lhs = d.dee.apply(&d.bracket01(&t.e0[v[0]], &t.e1[v[1]]));
            lhs == d.bracket00(&t.e0[v[0]], &t.dee_cols[v[1]])
        },
        &["x", "m"],
    );
    report.push(CheckItem::new(AXIOMS[3], dd.is_none(), dd));

    let e = first(
        pairs(n1, n1),
        |v| {
            let lhs = d.bracket01(&t.dee_cols[v[0]], &t.e1[v[1]]);
            let rhs = vector::neg(&d.bracket01(&t.dee_cols[v[1]], &t.e1[v[0]]));
            lhs == rhs
        },
        &["m", "n"],
    );
    report.push(CheckItem::new(AXIOMS[4], e.is_none(), e));

    let f = first(
        pairs(n0, n0),
        |v| d.phi0.apply(&t.br[v[0]][v[1]]) == d.bracket00(&t.phi0_cols[v[0]], &t.phi0_cols[v[1]]),
        &["x", "y"],
    );
    report.push(CheckItem::new(AXIOMS[5], f.is_none(), f));

    let g = first(
        pairs(n0, n1),
        |v| {
            let lhs = d.phi1.apply(&d.bracket01(&t.e0[v[0]], &t.e1[v[1]]));
            lhs == d.bracket01(&t.phi0_cols[v[0]], &d.phi1.column(v[1]))
        },
        &["x", "m"],
    );
    report.push(CheckItem::new(AXIOMS[6], g.is_none(), g));

    let h = first(
        triples(n0, n0, n0),
        |v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let lhs = d.dee.apply(&d.l3.coeff_signed(&[x, y, z]));
            let mut rhs = d.bracket00(&t.phi0_cols[x], &t.br[y][z]);
            rhs = vector::add(&rhs, &d.bracket00(&t.phi0_cols[y], &t.br[z][x]));
            rhs = vector::add(&rhs, &d.bracket00(&t.phi0_cols[z], &t.br[x][y]));
            lhs == rhs
        },
        &["x", "y", "z"],
    );
    report.push(CheckItem::new(AXIOMS[7], h.is_none(), h));

    let i = first(
        triples(n0, n0, n1),
        |v| {
            let (x, y, m) = (v[0], v[1], v[2]);
            let lhs = d.trilinear(&t.e0[x], &t.e0[y], &t.dee_cols[m]);
            let em = &t.e1[m];
            let mut rhs = d.bracket01(&t.phi0_cols[x], &d.bracket01(&t.e0[y], em));
            // l2(m, x) = -l2(x, m)
            rhs = vector::sub(&rhs, &d.bracket01(&t.phi0_cols[y], &d.bracket01(&t.e0[x], em)));
            // l2(φ1 m, l2(x, y)) = -l2(l2(x, y), φ1 m)
            rhs = vector::sub(&rhs, &d.bracket01(&t.br[x][y], &d.phi1.column(m)));
            lhs == rhs
        },
        &["x", "y", "m"],
    );
    report.push(CheckItem::new(AXIOMS[8], i.is_none(), i));

    let j = ten_term_witness(d, &t, mode);
    report.push(CheckItem::new(AXIOMS[9], j.is_none(), j.map(|q| basis_tuple("e", &q))));

    report.info("dim0", d.dim0.to_string());
    report.info("dim1", d.dim1.to_string());
    report.info("l3_nonzero", (!d.l3.is_zero()).to_string());
    if let SweepMode::Sampled { samples, seed } = mode {
        report.info("j_sweep", format!("sampled {samples} quadruples, seed {seed}"));
    } else {
        report.info("j_sweep", format!("exhaustive, {} quadruples", n0.pow(4)));
    }
    report
}

/// Precomputed contractions for (j): everything is multilinear, so basis quadruples suffice.
struct TenTerm {
    /// `l3_pq[p][q][a] = l3(e_a, φ0 e_p, φ0 e_q)`.
    l3_pq: Vec<Vec<Vec<Vec<Rational>>>>,
    /// `n2[y]` is the matrix of `m ↦ l2(φ0² e_y, m)`.
    n2: Vec<Matrix>,
}

impl TenTerm {
    fn new(d: &HomLie2Data, t: &Tables) -> Self {
        let n0 = d.dim0;
        let l3_pq = (0..n0)
            .map(|p| {
                (0..n0)
                    .map(|q| (0..n0).map(|a| d.trilinear(&t.e0[a], &t.phi0_cols[p], &t.phi0_cols[q])).collect())
                    .collect()
            })
            .collect();
        let phi0_sq = &d.phi0 * &d.phi0;
        let n2 = (0..n0)
            .map(|y| {
                let col = phi0_sq.column(y);
                let mut acc = Matrix::zeros(d.dim1, d.dim1);
                for (i, c) in vector::nonzeros(&col) {
                    acc = &acc + &d.l2_01[i].scale(c);
                }
                acc
            })
            .collect();
        TenTerm { l3_pq, n2 }
    }

    /// `l3(v, φ0 e_p, φ0 e_q)` for `v ∈ V0`.
    fn l3_first(&self, v: &[Rational], p: usize, q: usize, dim1: usize) -> Vec<Rational> {
        let mut acc = vector::zeros(dim1);
        for (a, c) in vector::nonzeros(v) {
            vector::axpy(&mut acc, c, &self.l3_pq[p][q][a]);
        }
        acc
    }

    fn holds(&self, d: &HomLie2Data, t: &Tables, w: usize, x: usize, y: usize, z: usize) -> bool {
        let n1 = d.dim1;
        let l3b = |a: usize, b: usize, c: usize| d.l3.coeff_signed(&[a, b, c]);
        // l3(φ0 a, l2(b, c), φ0 e) = -l3(l2(b, c), φ0 a, φ0 e)
        let mut lhs = self.l3_first(&t.br[w][x], y, z, n1);
        lhs = vector::sub(&lhs, &self.n2[y].apply(&l3b(w, x, z)));
        lhs = vector::sub(&lhs, &self.l3_first(&t.br[x][z], w, y, n1));
        lhs = vector::add(&lhs, &self.l3_first(&t.br[w][z], x, y, n1));

        let mut rhs = vector::neg(&self.n2[z].apply(&l3b(w, x, y)));
        rhs = vector::add(&rhs, &self.l3_first(&t.br[w][y], x, z, n1));
        rhs = vector::sub(&rhs, &self.l3_first(&t.br[x][y], w, z, n1));
        rhs = vector::add(&rhs, &self.n2[w].apply(&l3b(x, y, z)));
        rhs = vector::sub(&rhs, &self.n2[x].apply(&l3b(w, y, z)));
        rhs = vector::sub(&rhs, &self.l3_first(&t.br[y][z], w, x, n1));
        lhs == rhs
    }
}

fn ten_term_witness(d: &HomLie2Data, t: &Tables, mode: SweepMode) -> Option<Vec<usize>> {
    let n0 = d.dim0;
    if d.dim1 == 0 || n0 == 0 {
        return None;
    }
    let tt = TenTerm::new(d, t);
    match mode {
        SweepMode::Exhaustive => (0..n0).into_par_iter().find_map_first(|w| {
            for x in 0..n0 {
                for y in 0..n0 {
                    for z in 0..n0 {
                        if !tt.holds(d, t, w, x, y, z) {
                            return Some(vec![w, x, y, z]);
                        }
                    }
                }
            }
            None
        }),
        SweepMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).find_map(|_| {
                let q: Vec<usize> = (0..4).map(|_| rng.random_range(0..n0)).collect();
                (!tt.holds(d, t, q[0], q[1], q[2], q[3])).then_some(q)
            })
        }
    }
}
