//! Root-system data for the classical simple Lie algebras: Cartan matrices,
//! Weyl orbits, eigenvalues of the character differential operator, and the
//! Weyl dimension formula.
//!
//! Weights are always held in fundamental-weight coordinates. The only place
//! an orthonormal realization appears is inside [`build_algebra`], where the
//! Gram matrix of the fundamental weights is computed once and for all.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

/// Classical families. The builder interface admits further families; no
/// data tables are shipped for them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
            Family::D => write!(f, "D"),
        }
    }
}

/// A weight in fundamental-weight coordinates; doubles as a monomial
/// exponent vector for the torus variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scaled(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

/// Immutable root-system data for one algebra.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub family: Family,
    pub rank: usize,
    /// Cartan matrix; row `i` is the simple root `alpha_i` in fundamental
    /// coordinates.
    pub cartan: Vec<Vec<i32>>,
    /// Gram matrix of the fundamental weights, scaled so that the operator
    /// eigenvalue is integer-valued on the weight lattice (see
    /// [`eigenvalue`]).
    pub form: Vec<Vec<Rat>>,
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    /// The Weyl vector in fundamental coordinates: (1, 1, ..., 1).
    pub rho: Weight,
    /// Orbit cardinality |W lambda_j| for each fundamental weight.
    pub orbit_sizes: Vec<usize>,
    /// level(lambda_j): coefficient sum of lambda_j over the simple roots.
    /// Grades the root lattice; used as the primary sort key wherever a
    /// "maximal dominant term" is needed.
    pub levels: Vec<Rat>,
    /// Inverse Cartan matrix, for expanding weights over the simple roots.
    pub inv_cartan: Vec<Vec<Rat>>,
}

impl AlgebraData {
    /// Short name like "C2".
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Simple reflection `s_i(w) = w - w_i * alpha_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let wi = w.0[i];
        Weight(
            w.0.iter()
                .zip(&self.cartan[i])
                .map(|(c, a)| c - wi * a)
                .collect(),
        )
    }

    /// Height grading: sum of the coefficients of `w` over the simple roots,
    /// equal to `sum_j w_j * level(lambda_j)`. Strictly positive on nonzero
    /// dominant weights and on nonzero positive-root combinations.
    pub fn height(&self, w: &[i32]) -> Rat {
        let mut h = Rat::zero();
        for (j, &c) in w.iter().enumerate() {
            h += &self.levels[j] * Rat::from_integer(Int::from(c));
        }
        h
    }

    /// Coefficients of `w` over the simple roots (`w = sum c_i alpha_i`),
    /// exact rationals.
    pub fn root_coefficients(&self, w: &[i32]) -> Vec<Rat> {
        // w (row) = c (row) * cartan  =>  c = w * inv_cartan
        (0..self.rank)
            .map(|i| {
                let mut acc = Rat::zero();
                for (j, &x) in w.iter().enumerate() {
                    acc += &self.inv_cartan[j][i] * Rat::from_integer(Int::from(x));
                }
                acc
            })
            .collect()
    }

    /// `<u, v>` under the stored form, both in fundamental coordinates.
    pub fn pairing(&self, u: &[i32], v: &[i32]) -> Rat {
        let mut acc = Rat::zero();
        for (j, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (k, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                acc += &self.form[j][k] * Rat::from_integer(Int::from(a as i64 * b as i64));
            }
        }
        acc
    }

    /// Copy with the form matrix multiplied by `c`. Orbits, dimensions and
    /// characters are unchanged; eigenvalues scale by `c`.
    pub fn with_form_scaled(&self, c: &Rat) -> AlgebraData {
        let mut out = self.clone();
        for row in &mut out.form {
            for entry in row {
                *entry *= c;
            }
        }
        out
    }
}

/// Parses names like "A1", "C2", "B3".
pub fn parse_algebra(name: &str) -> Result<(Family, usize)> {
    let mut chars = name.chars();
    let fam = match chars.next() {
        Some('A') | Some('a') => Family::A,
        Some('B') | Some('b') => Family::B,
        Some('C') | Some('c') => Family::C,
        Some('D') | Some('d') => Family::D,
        _ => return Err(Error::UnsupportedAlgebra(name.to_string())),
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::UnsupportedAlgebra(name.to_string()))?;
    Ok((fam, rank))
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

type RatVec = Vec<Rat>;

fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

fn rvec(n: usize) -> RatVec {
    vec![Rat::zero(); n]
}

fn basis(n: usize, i: usize) -> RatVec {
    let mut v = rvec(n);
    v[i] = Rat::one();
    v
}

fn vadd(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vsub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vscale(a: &[Rat], c: &Rat) -> RatVec {
    a.iter().map(|x| x * c).collect()
}

/// Gauss-Jordan inverse over the rationals; `None` for singular input.
fn mat_inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = rvec(n);
            row[i] = Rat::one();
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for x in &mut a[col] {
            *x /= &p;
        }
        for x in &mut inv[col] {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let t = &a[col][c] * &f;
                a[r][c] -= t;
                let t = &inv[col][c] * &f;
                inv[r][c] -= t;
            }
        }
    }
    Some(inv)
}

/// gcd over the rationals: the positive generator of the group generated by
/// the inputs.
fn rat_gcd(values: &[Rat]) -> Rat {
    use num_integer::Integer;
    let mut num = Int::zero();
    let mut den = Int::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        // gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d), kept reduced as we fold.
        let (a, b) = (v.numer().abs(), v.denom().clone());
        num = (&num * &b).gcd(&(&a * &den));
        den *= &b;
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
    }
    Rat::new(num, den)
}

/// Builds the full data set for one classical algebra.
///
/// The form matrix starts from the short-root-squared-equals-two convention
/// and is then rescaled by the smallest positive rational that makes the
/// eigenvalue polynomial (quadratic and linear coefficients alike) integral
/// on the weight lattice. For A1, A2 and C2 this lands on the scales 2, 3/2
/// and 1 that the shipped fixtures assume.
pub fn build_algebra(family: Family, rank: usize) -> Result<AlgebraData> {
    if rank == 0 {
        return Err(Error::UnsupportedAlgebra(format!("{}0", family)));
    }
    if family == Family::D && rank < 3 {
        // D1 and D2 are not simple.
        return Err(Error::UnsupportedAlgebra(format!("{}{}", family, rank)));
    }
    let r = rank;
    let n = match family {
        Family::A => r + 1,
        _ => r,
    };
    // Metric weight per orthonormal axis: chosen so short roots have squared
    // length 2.
    let metric = match family {
        Family::B => rat(2),
        _ => rat(1),
    };
    let inner = |u: &[Rat], v: &[Rat]| -> Rat {
        let mut acc = Rat::zero();
        for (x, y) in u.iter().zip(v) {
            acc += x * y * &metric;
        }
        acc
    };

    // Simple roots and fundamental weights in the orthonormal realization.
    let mut alphas: Vec<RatVec> = Vec::with_capacity(r);
    let mut lambdas: Vec<RatVec> = Vec::with_capacity(r);
    let half = Rat::new(Int::one(), Int::from(2));
    match family {
        Family::A => {
            for i in 0..r {
                alphas.push(vsub(&basis(n, i), &basis(n, i + 1)));
            }
            let total: RatVec = (0..n).fold(rvec(n), |acc, i| vadd(&acc, &basis(n, i)));
            for i in 0..r {
                let mut lam = rvec(n);
                for k in 0..=i {
                    lam = vadd(&lam, &basis(n, k));
                }
                let frac = Rat::new(Int::from((i + 1) as i64), Int::from((r + 1) as i64));
                lambdas.push(vsub(&lam, &vscale(&total, &frac)));
            }
        }
        Family::B => {
            for i in 0..r.saturating_sub(1) {
                alphas.push(vsub(&basis(n, i), &basis(n, i + 1)));
            }
            alphas.push(basis(n, r - 1));
            for i in 0..r.saturating_sub(1) {
                let mut lam = rvec(n);
                for k in 0..=i {
                    lam = vadd(&lam, &basis(n, k));
                }
                lambdas.push(lam);
            }
            let total: RatVec = (0..n).fold(rvec(n), |acc, i| vadd(&acc, &basis(n, i)));
            lambdas.push(vscale(&total, &half));
        }
        Family::C => {
            for i in 0..r.saturating_sub(1) {
                alphas.push(vsub(&basis(n, i), &basis(n, i + 1)));
            }
            alphas.push(vscale(&basis(n, r - 1), &rat(2)));
            for i in 0..r {
                let mut lam = rvec(n);
                for k in 0..=i {
                    lam = vadd(&lam, &basis(n, k));
                }
                lambdas.push(lam);
            }
        }
        Family::D => {
            for i in 0..r - 1 {
                alphas.push(vsub(&basis(n, i), &basis(n, i + 1)));
            }
            alphas.push(vadd(&basis(n, r - 2), &basis(n, r - 1)));
            for i in 0..r - 2 {
                let mut lam = rvec(n);
                for k in 0..=i {
                    lam = vadd(&lam, &basis(n, k));
                }
                lambdas.push(lam);
            }
            let mut spin_minus = rvec(n);
            let mut spin_plus = rvec(n);
            for k in 0..r - 1 {
                spin_minus = vadd(&spin_minus, &basis(n, k));
                spin_plus = vadd(&spin_plus, &basis(n, k));
            }
            spin_minus = vsub(&spin_minus, &basis(n, r - 1));
            spin_plus = vadd(&spin_plus, &basis(n, r - 1));
            lambdas.push(vscale(&spin_minus, &half));
            lambdas.push(vscale(&spin_plus, &half));
        }
    }

    // Cartan matrix.
    let mut cartan = vec![vec![0i32; r]; r];
    for i in 0..r {
        for j in 0..r {
            let v = rat(2) * inner(&alphas[i], &alphas[j]) / inner(&alphas[j], &alphas[j]);
            if !v.is_integer() {
                return Err(Error::Internal("non-integer Cartan entry".into()));
            }
            cartan[i][j] = i32::try_from(v.to_integer())
                .map_err(|_| Error::Internal("Cartan entry overflow".into()))?;
        }
    }

    // Gram matrix of fundamental weights under short^2 = 2.
    let base_form: Vec<Vec<Rat>> = (0..r)
        .map(|i| (0..r).map(|j| inner(&lambdas[i], &lambdas[j])).collect())
        .collect();

    // Smallest positive rational scale making the eigenvalue coefficients
    // integral: the quadratic diagonal F_jj, the cross terms 2 F_jk, and the
    // linear part 2 (F 1)_j must all clear.
    let mut gens: Vec<Rat> = Vec::new();
    for j in 0..r {
        gens.push(base_form[j][j].clone());
        let mut l = Rat::zero();
        for k in 0..r {
            l += &base_form[j][k];
        }
        gens.push(l * rat(2));
        for k in j + 1..r {
            gens.push(&base_form[j][k] * rat(2));
        }
    }
    let g = rat_gcd(&gens);
    let scale = g.recip();
    let form: Vec<Vec<Rat>> = base_form
        .iter()
        .map(|row| row.iter().map(|x| x * &scale).collect())
        .collect();

    // Positive roots in the orthonormal realization.
    let mut pos_e: Vec<RatVec> = Vec::new();
    match family {
        Family::A => {
            for i in 0..n {
                for j in i + 1..n {
                    pos_e.push(vsub(&basis(n, i), &basis(n, j)));
                }
            }
        }
        Family::B => {
            for i in 0..r {
                for j in i + 1..r {
                    pos_e.push(vsub(&basis(n, i), &basis(n, j)));
                    pos_e.push(vadd(&basis(n, i), &basis(n, j)));
                }
                pos_e.push(basis(n, i));
            }
        }
        Family::C => {
            for i in 0..r {
                for j in i + 1..r {
                    pos_e.push(vsub(&basis(n, i), &basis(n, j)));
                    pos_e.push(vadd(&basis(n, i), &basis(n, j)));
                }
                pos_e.push(vscale(&basis(n, i), &rat(2)));
            }
        }
        Family::D => {
            for i in 0..r {
                for j in i + 1..r {
                    pos_e.push(vsub(&basis(n, i), &basis(n, j)));
                    pos_e.push(vadd(&basis(n, i), &basis(n, j)));
                }
            }
        }
    }
    // Fundamental coordinates of a vector v: n_i = 2<v, alpha_i>/<alpha_i, alpha_i>.
    let to_fund = |v: &[Rat]| -> Result<Weight> {
        let mut out = Vec::with_capacity(r);
        for alpha in &alphas {
            let c = rat(2) * inner(v, alpha) / inner(alpha, alpha);
            if !c.is_integer() {
                return Err(Error::Internal("non-integer weight coordinate".into()));
            }
            out.push(
                i32::try_from(c.to_integer())
                    .map_err(|_| Error::Internal("weight coordinate overflow".into()))?,
            );
        }
        Ok(Weight(out))
    };
    let positive_roots: Vec<Weight> = pos_e
        .iter()
        .map(|v| to_fund(v))
        .collect::<Result<_>>()?;
    let simple_roots: Vec<Weight> = (0..r).map(|i| Weight(cartan[i].clone())).collect();

    let inv_cartan = mat_inverse(
        &cartan
            .iter()
            .map(|row| row.iter().map(|&x| rat(x as i64)).collect())
            .collect::<Vec<_>>(),
    )
    .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
    let levels: Vec<Rat> = (0..r)
        .map(|j| {
            let mut s = Rat::zero();
            for col in inv_cartan[j].iter() {
                s += col;
            }
            s
        })
        .collect();

    let mut alg = AlgebraData {
        family,
        rank,
        cartan,
        form,
        simple_roots,
        positive_roots,
        rho: Weight(vec![1; r]),
        orbit_sizes: Vec::new(),
        levels,
        inv_cartan,
    };
    alg.orbit_sizes = (0..r)
        .map(|j| {
            let mut lam = vec![0; r];
            lam[j] = 1;
            weyl_orbit(&alg, &Weight(lam)).len()
        })
        .collect();
    Ok(alg)
}

/// A nonzero element `mu` of the positive root cone together with its
/// coefficients over the simple roots.
#[derive(Clone, Debug)]
pub struct ConePoint {
    /// `mu = sum_i coeffs[i] * alpha_i`, all coefficients >= 0, not all 0.
    pub coeffs: Vec<i32>,
    /// Fundamental coordinates of `mu`.
    pub mu: Weight,
}

/// All nonzero non-negative integer combinations `mu` of simple roots with
/// `m - mu` componentwise non-negative, sorted by increasing coefficient sum
/// (the height), ties broken lexicographically.
///
/// The coefficient sum is bounded by the height of `m` because applying the
/// inverse Cartan matrix to the constraint `mu <= m` gives
/// `sum_i c_i <= sum_j m_j level_j`.
pub fn cone_below(alg: &AlgebraData, m: &Weight) -> Vec<ConePoint> {
    let bound_rat = alg.height(&m.0);
    if bound_rat < Rat::zero() {
        return Vec::new();
    }
    let bound = bound_rat.floor().to_integer();
    let bound = i32::try_from(bound).unwrap_or(0);
    let r = alg.rank;
    let mut out = Vec::new();
    let mut c = vec![0i32; r];
    enumerate(alg, m, &mut c, 0, bound, &mut out);
    out.sort_by(|a, b| {
        let sa: i32 = a.coeffs.iter().sum();
        let sb: i32 = b.coeffs.iter().sum();
        sa.cmp(&sb).then_with(|| a.coeffs.cmp(&b.coeffs))
    });
    return out;

    fn enumerate(
        alg: &AlgebraData,
        m: &Weight,
        c: &mut Vec<i32>,
        pos: usize,
        budget: i32,
        out: &mut Vec<ConePoint>,
    ) {
        if pos == alg.rank {
            if c.iter().all(|&x| x == 0) {
                return;
            }
            let mut mu = vec![0i32; alg.rank];
            for (i, &ci) in c.iter().enumerate() {
                for (j, &a) in alg.cartan[i].iter().enumerate() {
                    mu[j] += ci * a;
                }
            }
            if mu.iter().zip(&m.0).all(|(x, y)| x <= y) {
                out.push(ConePoint {
                    coeffs: c.clone(),
                    mu: Weight(mu),
                });
            }
            return;
        }
        for v in 0..=budget {
            c[pos] = v;
            enumerate(alg, m, c, pos + 1, budget - v, out);
        }
        c[pos] = 0;
    }
}

/// Full Weyl orbit of `w`: breadth-first closure under the simple
/// reflections.
pub fn weyl_orbit(alg: &AlgebraData, w: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut queue = vec![w.clone()];
    seen.insert(w.0.clone());
    let mut out = Vec::new();
    while let Some(v) = queue.pop() {
        for i in 0..alg.rank {
            let img = alg.reflect(i, &v);
            if seen.insert(img.0.clone()) {
                queue.push(img);
            }
        }
        out.push(v);
    }
    out
}

/// Operator eigenvalue `<lambda, lambda + 2 rho>` for the weight `m`
/// (integer weights give integer values under the shipped normalization,
/// but the result is exact for any form scale).
pub fn eigenvalue(alg: &AlgebraData, m: &Weight) -> Rat {
    let m_plus = Weight(m.0.iter().zip(&alg.rho.0).map(|(a, b)| a + 2 * b).collect());
    alg.pairing(&m.0, &m_plus.0)
}

/// Weyl dimension formula `prod_{alpha > 0} <m + rho, alpha> / <rho, alpha>`.
pub fn dimension(alg: &AlgebraData, m: &Weight) -> Result<Int> {
    if !m.is_dominant() {
        return Err(Error::NotDominant(m.0.clone()));
    }
    let m_rho = m.add(&alg.rho);
    let mut acc = Rat::one();
    for alpha in &alg.positive_roots {
        acc *= alg.pairing(&m_rho.0, &alpha.0) / alg.pairing(&alg.rho.0, &alpha.0);
    }
    if !acc.is_integer() || acc <= Rat::zero() {
        return Err(Error::Internal(format!(
            "dimension formula gave non-positive-integer value {acc}"
        )));
    }
    Ok(acc.to_integer())
}
