//! Second-order linear differential operators with polynomial coefficients,
//! their action on polynomials and on rational functions, and Taylor
//! coefficient extraction for rational generating functions.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, MultiPoly};
use crate::{Int, TPoly, ZPoly};

/// Which variable family the operator differentiates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarSpace {
    /// The fundamental characters `z_1..z_r`.
    Z,
    /// The auxiliary generating-function variables `t_1..t_r` (or a single
    /// shared `t`).
    T,
}

/// `sum_{j<=k} c_{jk} d_j d_k + sum_j b_j d_j` with polynomial coefficients.
///
/// Keys satisfy `j <= k`; the entry at `(j, k)` with `j < k` holds the full
/// cross coefficient (the sum of both symmetric halves), which keeps all
/// coefficients integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp<C> {
    pub space: VarSpace,
    pub second: BTreeMap<(usize, usize), MultiPoly<C>>,
    pub first: BTreeMap<usize, MultiPoly<C>>,
}

impl<C: Coeff> DiffOp<C> {
    pub fn new(space: VarSpace) -> Self {
        DiffOp {
            space,
            second: BTreeMap::new(),
            first: BTreeMap::new(),
        }
    }

    /// Adds `c * d_j d_k`, normalizing the key to `j <= k`.
    pub fn add_second(&mut self, j: usize, k: usize, c: MultiPoly<C>) {
        if c.is_zero() {
            return;
        }
        let key = if j <= k { (j, k) } else { (k, j) };
        match self.second.get_mut(&key) {
            Some(p) => {
                p.add_assign_ref(&c);
                if p.is_zero() {
                    self.second.remove(&key);
                }
            }
            None => {
                self.second.insert(key, c);
            }
        }
    }

    pub fn add_first(&mut self, j: usize, c: MultiPoly<C>) {
        if c.is_zero() {
            return;
        }
        match self.first.get_mut(&j) {
            Some(p) => {
                p.add_assign_ref(&c);
                if p.is_zero() {
                    self.first.remove(&j);
                }
            }
            None => {
                self.first.insert(j, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.second.is_empty() && self.first.is_empty()
    }

    /// Applies the operator to a polynomial over the same variable space.
    pub fn apply_poly(&self, p: &MultiPoly<C>) -> MultiPoly<C> {
        let mut out = MultiPoly::zero();
        let mut first_derivs: HashMap<usize, MultiPoly<C>> = HashMap::new();
        let mut d1 = |v: usize, p: &MultiPoly<C>| -> MultiPoly<C> {
            first_derivs
                .entry(v)
                .or_insert_with(|| p.derivative(v))
                .clone()
        };
        for (&(j, k), c) in &self.second {
            let djk = d1(j, p).derivative(k);
            out.add_assign_ref(&djk.mul_ref(c));
        }
        for (&j, b) in &self.first {
            out.add_assign_ref(&d1(j, p).mul_ref(b));
        }
        out
    }
}

/// A rational generating function `N(t; z) / D(t; z)`; the denominator has
/// constant term 1 so the Taylor expansion at `t = 0` is well defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    pub numerator: TPoly,
    pub denominator: TPoly,
}

impl RationalGF {
    pub fn new(numerator: TPoly, denominator: TPoly) -> Result<Self> {
        if !denominator.coeff(&[]).is_one() {
            return Err(Error::Internal(
                "generating-function denominator must have constant term 1".into(),
            ));
        }
        Ok(RationalGF {
            numerator,
            denominator,
        })
    }
}

/// Derivative of a [`TPoly`] with respect to `t_v` or `z_v`.
fn tpoly_derivative(p: &TPoly, space: VarSpace, v: usize) -> TPoly {
    match space {
        VarSpace::T => p.derivative(v),
        VarSpace::Z => p.map_coeffs(|zp| zp.derivative(v)),
    }
}

/// Lifts an operator coefficient into the combined `t`/`z` ring.
fn lift_coeff(c: &MultiPoly<Int>, space: VarSpace) -> TPoly {
    match space {
        // A t-polynomial: exponents stay, integer coefficients become
        // constant z-polynomials.
        VarSpace::T => c.map_coeffs(|n| ZPoly::constant(n.clone())),
        // A z-polynomial: constant in t.
        VarSpace::Z => TPoly::constant(c.clone()),
    }
}

/// Applies `op` to `N/D` by the quotient rule and returns the numerator of
/// the result over the common denominator `D^3`.
///
/// The caller compares against zero (or combines residuals of several
/// operators over the same denominator).
pub fn apply_op_rational(op: &DiffOp<Int>, gf: &RationalGF) -> TPoly {
    let n = &gf.numerator;
    let d = &gf.denominator;
    let d2 = d.mul_ref(d);
    let mut dn: HashMap<usize, TPoly> = HashMap::new();
    let mut dd: HashMap<usize, TPoly> = HashMap::new();
    let space = op.space;
    let mut dn_get = |v: usize| -> TPoly {
        dn.entry(v)
            .or_insert_with(|| tpoly_derivative(n, space, v))
            .clone()
    };
    let mut dd_get = |v: usize| -> TPoly {
        dd.entry(v)
            .or_insert_with(|| tpoly_derivative(d, space, v))
            .clone()
    };

    let mut out = TPoly::zero();
    for (&(j, k), c) in &op.second {
        let nj = dn_get(j);
        let nk = dn_get(k);
        let dj = dd_get(j);
        let dk = dd_get(k);
        let njk = tpoly_derivative(&nj, space, k);
        let djk = tpoly_derivative(&dj, space, k);
        // d_j d_k (N/D) * D^3 =
        //   D^2 N_jk - D (N_j D_k + N_k D_j + N D_jk) + 2 N D_j D_k
        let mut term = d2.mul_ref(&njk);
        let mut mid = nj.mul_ref(&dk);
        mid.add_assign_ref(&nk.mul_ref(&dj));
        mid.add_assign_ref(&n.mul_ref(&djk));
        term.sub_assign_ref(&d.mul_ref(&mid));
        let mut tail = n.mul_ref(&dj).mul_ref(&dk);
        tail.add_assign_ref(&tail.clone());
        term.add_assign_ref(&tail);
        out.add_assign_ref(&term.mul_ref(&lift_coeff(c, space)));
    }
    for (&j, b) in &op.first {
        // d_j (N/D) * D^3 = D (D N_j - N D_j)
        let mut term = d.mul_ref(&dn_get(j));
        term.sub_assign_ref(&n.mul_ref(&dd_get(j)));
        out.add_assign_ref(&d.mul_ref(&term).mul_ref(&lift_coeff(b, space)));
    }
    out
}

/// Residual numerator of `(t_op - z_op)(N/D)` over `D^3`; identically zero
/// exactly when the generating function satisfies the differential equation.
pub fn pde_residual(t_op: &DiffOp<Int>, z_op: &DiffOp<Int>, gf: &RationalGF) -> TPoly {
    let mut res = apply_op_rational(t_op, gf);
    res.sub_assign_ref(&apply_op_rational(z_op, gf));
    res
}

/// Taylor coefficients of `N / D` on the box `0 <= e_v <= bounds[v]`,
/// extracted by recursive convolution from `N = D * G`.
pub fn series_coefficients(
    gf: &RationalGF,
    bounds: &[i32],
) -> Result<BTreeMap<Vec<i32>, ZPoly>> {
    if !gf.denominator.coeff(&[]).is_one() {
        return Err(Error::Internal(
            "series expansion requires denominator constant term 1".into(),
        ));
    }
    let nv = bounds.len();
    let dterms: Vec<(Vec<i32>, ZPoly)> = gf
        .denominator
        .iter_terms()
        .filter(|(e, _)| !e.is_empty())
        .map(|(e, c)| {
            let mut full = e.clone();
            full.resize(nv, 0);
            (full, c.clone())
        })
        .collect();
    for (e, _) in &dterms {
        if e.iter().any(|&x| x < 0) {
            return Err(Error::Internal("negative t-exponent in denominator".into()));
        }
    }
    let mut out: BTreeMap<Vec<i32>, ZPoly> = BTreeMap::new();
    let mut e = vec![0i32; nv];
    loop {
        let mut g = gf.numerator.coeff(&e);
        for (de, dc) in &dterms {
            if de.iter().zip(&e).all(|(a, b)| a <= b) {
                let prev: Vec<i32> = e.iter().zip(de).map(|(a, b)| a - b).collect();
                let gp = out
                    .get(&prev)
                    .expect("ascending iteration covers all lower indices");
                g.sub_assign_ref(&dc.mul_ref(gp));
            }
        }
        out.insert(e.clone(), g);
        // Odometer over the box, ascending so dependencies come first.
        let mut v = 0;
        loop {
            if v == nv {
                return Ok(out);
            }
            e[v] += 1;
            if e[v] <= bounds[v] {
                break;
            }
            e[v] = 0;
            v += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmono(e: &[i32], c: i64) -> ZPoly {
        ZPoly::monomial(e.to_vec(), Int::from(c))
    }

    /// The rank-one operator (z^2 - 4) d^2 + 3 z d.
    fn a1_z_op() -> DiffOp<Int> {
        let mut op = DiffOp::new(VarSpace::Z);
        op.add_second(0, 0, zmono(&[2], 1) + ZPoly::constant(Int::from(-4)));
        op.add_first(0, zmono(&[1], 3));
        op
    }

    /// The rank-one companion t^2 d^2 + 3 t d.
    fn a1_t_op() -> DiffOp<Int> {
        let mut op = DiffOp::new(VarSpace::T);
        op.add_second(0, 0, MultiPoly::monomial(vec![2], Int::one()));
        op.add_first(0, MultiPoly::monomial(vec![1], Int::from(3)));
        op
    }

    /// 1 / (1 - t z + t^2) as a RationalGF in one t variable.
    fn a1_gf() -> RationalGF {
        let den = TPoly::constant(ZPoly::one())
            + TPoly::monomial(vec![1], zmono(&[1], -1))
            + TPoly::monomial(vec![2], ZPoly::one());
        RationalGF::new(TPoly::constant(ZPoly::one()), den).unwrap()
    }

    #[test]
    fn a1_operator_on_z_gives_3z() {
        let op = a1_z_op();
        assert_eq!(op.apply_poly(&ZPoly::var(0)), zmono(&[1], 3));
    }

    #[test]
    fn operator_kills_constants() {
        let op = a1_z_op();
        assert!(op.apply_poly(&ZPoly::one()).is_zero());
    }

    #[test]
    fn a2_operator_on_adjoint_character() {
        // (z1^2 - 3 z2) d1^2 + (z2^2 - 3 z1) d2^2 + (z1 z2 - 9) d1 d2
        //   + 4 z1 d1 + 4 z2 d2, applied to z1 z2 - 1, gives 8 (z1 z2 - 1).
        let mut op = DiffOp::new(VarSpace::Z);
        op.add_second(0, 0, zmono(&[2], 1) + zmono(&[0, 1], -3));
        op.add_second(1, 1, zmono(&[0, 2], 1) + zmono(&[1], -3));
        op.add_second(0, 1, zmono(&[1, 1], 1) + ZPoly::constant(Int::from(-9)));
        op.add_first(0, zmono(&[1], 4));
        op.add_first(1, zmono(&[0, 1], 4));
        let chi = zmono(&[1, 1], 1) + ZPoly::constant(Int::from(-1));
        assert_eq!(op.apply_poly(&chi), chi.scale(&Int::from(8)));
    }

    #[test]
    fn a1_generating_function_satisfies_pde() {
        let res = pde_residual(&a1_t_op(), &a1_z_op(), &a1_gf());
        assert!(res.is_zero(), "residual: {:?}", res);
    }

    #[test]
    fn perturbed_numerator_breaks_pde() {
        let mut gf = a1_gf();
        gf.numerator.insert_add(vec![1], ZPoly::one());
        let res = pde_residual(&a1_t_op(), &a1_z_op(), &gf);
        assert!(!res.is_zero());
    }

    #[test]
    fn zero_operator_rational_application_is_zero() {
        let op = DiffOp::new(VarSpace::T);
        assert!(apply_op_rational(&op, &a1_gf()).is_zero());
    }

    #[test]
    fn rational_application_with_unit_denominator_matches_polynomial() {
        let op = a1_z_op();
        let n = TPoly::monomial(vec![2], zmono(&[3], 2) + zmono(&[1], -1))
            + TPoly::constant(zmono(&[2], 5));
        let gf = RationalGF::new(n.clone(), TPoly::constant(ZPoly::one())).unwrap();
        let via_rational = apply_op_rational(&op, &gf);
        let direct = n.map_coeffs(|zp| op.apply_poly(zp));
        assert_eq!(via_rational, direct);
    }

    #[test]
    fn a1_series_coefficient_t3() {
        let coeffs = series_coefficients(&a1_gf(), &[3]).unwrap();
        // chi_3 = z^3 - 2 z
        assert_eq!(coeffs[&vec![3]], zmono(&[3], 1) + zmono(&[1], -2));
        assert_eq!(coeffs[&vec![0]], ZPoly::one());
        assert_eq!(coeffs[&vec![1]], zmono(&[1], 1));
        assert_eq!(coeffs[&vec![2]], zmono(&[2], 1) + ZPoly::constant(Int::from(-1)));
    }

    #[test]
    fn series_of_d_over_d_is_one() {
        let den = a1_gf().denominator;
        let gf = RationalGF::new(den.clone(), den).unwrap();
        let coeffs = series_coefficients(&gf, &[5]).unwrap();
        assert!(coeffs[&vec![0]].is_one());
        for k in 1..=5 {
            assert!(coeffs[&vec![k]].is_zero(), "order {k}");
        }
    }
}
