//! Exact multivariate Laurent/ordinary polynomial arithmetic, generic over the
//! coefficient ring.
//!
//! A [`MultiPoly<C>`] is a finitely supported map from integer exponent
//! vectors to coefficients. Exponent vectors are stored in a canonical
//! trimmed form (no trailing zeros), which makes the type arity-agnostic:
//! the same value can be read as a polynomial in any number of variables
//! `>=` the length of its longest exponent vector. Negative exponents are
//! allowed, so the type doubles as a Laurent polynomial ring.
//!
//! Coefficients only need the ring operations in [`Coeff`]; the crate
//! instantiates this with arbitrary-precision integers, rationals, and with
//! polynomials themselves (giving polynomials in `t` whose coefficients are
//! polynomials in `z`).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

/// Exponent vector in canonical form: trailing zeros removed.
pub type Expo = Vec<i32>;

/// Removes trailing zeros in place.
pub fn trim_expo(e: &mut Expo) {
    while e.last() == Some(&0) {
        e.pop();
    }
}

/// Componentwise sum of two canonical exponent vectors, canonical result.
pub fn add_expo(a: &[i32], b: &[i32]) -> Expo {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0));
    }
    trim_expo(&mut out);
    out
}

/// Componentwise difference `a - b`, canonical result.
pub fn sub_expo(a: &[i32], b: &[i32]) -> Expo {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).copied().unwrap_or(0) - b.get(i).copied().unwrap_or(0));
    }
    trim_expo(&mut out);
    out
}

/// Graded-lexicographic comparison: first by total degree, then
/// lexicographically (padding with zeros on the right).
pub fn cmp_grlex(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
    let ga: i64 = a.iter().map(|&x| x as i64).sum();
    let gb: i64 = b.iter().map(|&x| x as i64).sum();
    ga.cmp(&gb).then_with(|| {
        let n = a.len().max(b.len());
        for i in 0..n {
            let (x, y) = (
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            );
            match x.cmp(&y) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Coefficient ring operations required by [`MultiPoly`].
///
/// Implemented for [`Int`], [`Rat`] and for `MultiPoly<C>` itself, so
/// polynomial coefficients can be nested.
pub trait Coeff: Clone + Eq + fmt::Debug + Zero + One + Neg<Output = Self> + Send + Sync {
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Exact division; `None` when `rhs` does not divide `self` in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
}

impl Coeff for Int {
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        use num_integer::Integer;
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    fn from_i64(n: i64) -> Self {
        Int::from(n)
    }
}

impl Coeff for Rat {
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(Int::from(n))
    }
}

/// Finitely supported exponent-vector -> coefficient map.
///
/// Invariant: no stored zero coefficients, all keys trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C> {
    terms: HashMap<Expo, C>,
}

impl<C: Coeff> Default for MultiPoly<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coeff> MultiPoly<C> {
    pub fn new() -> Self {
        MultiPoly {
            terms: HashMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::new();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    /// Single term `c * x^e`. `e` need not be trimmed.
    pub fn monomial(mut e: Expo, c: C) -> Self {
        let mut p = Self::new();
        if !c.is_zero() {
            trim_expo(&mut e);
            p.terms.insert(e, c);
        }
        p
    }

    /// The variable `x_v` (0-based).
    pub fn var(v: usize) -> Self {
        let mut e = vec![0; v + 1];
        e[v] = 1;
        Self::monomial(e, C::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Expo, C)>>(it: I) -> Self {
        let mut p = Self::new();
        for (e, c) in it {
            p.insert_add(e, c);
        }
        p
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Expo, &C)> {
        self.terms.iter()
    }

    /// Coefficient at `e` (zero if absent). `e` need not be trimmed.
    pub fn coeff(&self, e: &[i32]) -> C {
        let mut k = e.to_vec();
        trim_expo(&mut k);
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c * x^e` in place, dropping the term if it cancels.
    pub fn insert_add(&mut self, mut e: Expo, c: C) {
        if c.is_zero() {
            return;
        }
        trim_expo(&mut e);
        match self.terms.entry(e) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &Self) {
        for (e, c) in &rhs.terms {
            self.insert_add(e.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, rhs: &Self) {
        for (e, c) in &rhs.terms {
            self.insert_add(e.clone(), -c.clone());
        }
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert_add(add_expo(ea, eb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        let mut out = Self::new();
        for (e, v) in &self.terms {
            out.insert_add(e.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::new();
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), f(c));
        }
        out
    }

    /// Applies `f` to every exponent vector (a linear change of monomials,
    /// e.g. a reflection acting on weights). Colliding images are summed.
    pub fn map_exponents(&self, mut f: impl FnMut(&[i32]) -> Expo) -> Self {
        let mut out = Self::new();
        for (e, c) in &self.terms {
            out.insert_add(f(e), c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(C::one());
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `v` (Laurent rule:
    /// `d/dx x^n = n x^(n-1)` for any integer `n`).
    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::new();
        for (e, c) in &self.terms {
            let ev = e.get(v).copied().unwrap_or(0);
            if ev == 0 {
                continue;
            }
            let mut ne = e.clone();
            if ne.len() <= v {
                ne.resize(v + 1, 0);
            }
            ne[v] -= 1;
            out.insert_add(ne, c.mul_ref(&C::from_i64(ev as i64)));
        }
        out
    }

    /// Sum of all coefficients, i.e. the value at `x = (1, 1, ...)`.
    pub fn sum_coeffs(&self) -> C {
        let mut acc = C::zero();
        for c in self.terms.values() {
            acc.add_assign_ref(c);
        }
        acc
    }

    /// Leading term under graded lex.
    pub fn leading_term(&self) -> Option<(&Expo, &C)> {
        self.terms
            .iter()
            .max_by(|a, b| cmp_grlex(a.0, b.0))
    }

    /// Trailing term under graded lex.
    pub fn trailing_term(&self) -> Option<(&Expo, &C)> {
        self.terms
            .iter()
            .min_by(|a, b| cmp_grlex(a.0, b.0))
    }

    /// Terms sorted descending by graded lex; the canonical edge order.
    pub fn sorted_terms(&self) -> Vec<(Expo, C)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| cmp_grlex(&b.0, &a.0));
        v
    }

    /// Per-variable (min, max) exponents over the support, padded to `nvars`.
    pub fn support_box(&self, nvars: usize) -> (Vec<i32>, Vec<i32>) {
        let mut lo = vec![0; nvars];
        let mut hi = vec![0; nvars];
        let mut first = true;
        for e in self.terms.keys() {
            for v in 0..nvars {
                let x = e.get(v).copied().unwrap_or(0);
                if first {
                    lo[v] = x;
                    hi[v] = x;
                } else {
                    lo[v] = lo[v].min(x);
                    hi[v] = hi[v].max(x);
                }
            }
            first = false;
        }
        (lo, hi)
    }

    /// Maximum exponent of variable `v` over the support (0 for the zero poly).
    pub fn max_degree(&self, v: usize) -> i32 {
        self.terms
            .keys()
            .map(|e| e.get(v).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// True if every exponent is componentwise non-negative (ordinary, not
    /// Laurent, polynomial).
    pub fn exponents_nonnegative(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Exact division in the Laurent ring: returns `q` with `self = q * rhs`,
    /// or [`Error::NonExactDivision`] when no such Laurent polynomial exists.
    ///
    /// Works by leading-term elimination under graded lex. Every quotient
    /// exponent must lie in the Minkowski-difference box of the two supports,
    /// which bounds the number of steps and makes failure detectable.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.terms.is_empty() {
            return Err(Error::NonExactDivision);
        }
        if self.terms.is_empty() {
            return Ok(Self::new());
        }
        let nvars = self
            .terms
            .keys()
            .chain(rhs.terms.keys())
            .map(|e| e.len())
            .max()
            .unwrap_or(0);
        let (plo, phi) = self.support_box(nvars);
        let (qlo, qhi) = rhs.support_box(nvars);
        // If self = q * rhs, the Newton polytopes add, so per coordinate:
        // min(q) = min(self) - min(rhs), max(q) = max(self) - max(rhs).
        let blo: Vec<i32> = (0..nvars).map(|v| plo[v] - qlo[v]).collect();
        let bhi: Vec<i32> = (0..nvars).map(|v| phi[v] - qhi[v]).collect();
        if (0..nvars).any(|v| blo[v] > bhi[v]) {
            return Err(Error::NonExactDivision);
        }
        let max_steps: i64 = (0..nvars)
            .map(|v| (bhi[v] - blo[v] + 1) as i64)
            .product::<i64>()
            .max(1);

        let (lt_e, lt_c) = rhs.leading_term().expect("nonzero divisor");
        let lt_e = lt_e.clone();
        let lt_c = lt_c.clone();
        let mut rem = self.clone();
        let mut quot = Self::new();
        let mut steps: i64 = 0;
        while let Some((re, rc)) = rem.leading_term() {
            let qe = sub_expo(re, &lt_e);
            if (0..nvars).any(|v| {
                let x = qe.get(v).copied().unwrap_or(0);
                x < blo[v] || x > bhi[v]
            }) {
                return Err(Error::NonExactDivision);
            }
            let qc = rc.exact_div(&lt_c).ok_or(Error::NonExactDivision)?;
            steps += 1;
            if steps > max_steps {
                return Err(Error::NonExactDivision);
            }
            let t = Self::monomial(qe, qc);
            rem.sub_assign_ref(&t.mul_ref(rhs));
            quot.add_assign_ref(&t);
        }
        Ok(quot)
    }

    /// Evaluates the polynomial by substituting `values[v]` for `x_v`,
    /// mapping coefficients into the target ring with `lift`.
    ///
    /// Negative exponents require the substituted value to be invertible
    /// enough for [`Coeff::exact_div`]; division failure is an error.
    pub fn substitute<T: Coeff>(
        &self,
        values: &[T],
        lift: impl Fn(&C) -> T,
    ) -> Result<T> {
        let mut pow_cache: HashMap<(usize, i32), T> = HashMap::new();
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut term = lift(c);
            for (v, &ev) in e.iter().enumerate() {
                if ev == 0 {
                    continue;
                }
                let p = pow_cache
                    .entry((v, ev))
                    .or_insert_with(|| {
                        let base = values[v].clone();
                        let mut acc = T::one();
                        for _ in 0..ev.unsigned_abs() {
                            acc = acc.mul_ref(&base);
                        }
                        acc
                    })
                    .clone();
                if ev > 0 {
                    term = term.mul_ref(&p);
                } else {
                    term = term.exact_div(&p).ok_or(Error::NonExactDivision)?;
                }
            }
            acc.add_assign_ref(&term);
        }
        Ok(acc)
    }
}

impl<C: Coeff> Zero for MultiPoly<C> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for MultiPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Vec::new())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }
}

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        MultiPoly { terms }
    }
}

impl<C: Coeff> Add for MultiPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<C: Coeff> Sub for MultiPoly<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl<C: Coeff> Mul for MultiPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<C: Coeff> Coeff for MultiPoly<C> {
    fn add_assign_ref(&mut self, rhs: &Self) {
        MultiPoly::add_assign_ref(self, rhs);
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        MultiPoly::sub_assign_ref(self, rhs);
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        MultiPoly::mul_ref(self, rhs)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        MultiPoly::exact_div(self, rhs).ok()
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{:?}*x^{:?}", c, e)?;
        }
        Ok(())
    }
}
