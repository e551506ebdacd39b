//! Ground-truth characters via the Weyl character formula, conversion of
//! Weyl-invariant Laurent polynomials to polynomials in the fundamental
//! characters, and Clebsch-Gordan decomposition by highest-weight peeling.
//!
//! This module is the oracle side of the dual-route design: characters
//! computed here never touch the differential operator, so they can certify
//! the operator-based solver.

use std::collections::HashMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie::{weyl_orbit, AlgebraData, Weight};
use crate::poly::MultiPoly;
use crate::{Int, LaurentPoly, Rat, ZPoly};

/// A character in the torus variables.
#[derive(Clone, Debug)]
pub struct CharacterX {
    pub weight: Weight,
    pub poly: LaurentPoly,
}

/// Alternating orbit sum `sum_w det(w) x^{w(v)}` for strictly dominant `v`.
///
/// The orbit of a strictly dominant weight is free, so the sign is the
/// parity of the reflection word; the breadth-first closure carries it
/// along and cross-checks consistency on revisits.
fn alternating_orbit_sum(alg: &AlgebraData, v: &Weight) -> Result<LaurentPoly> {
    let mut signs: HashMap<Vec<i32>, i8> = HashMap::new();
    signs.insert(v.0.clone(), 1);
    let mut queue = vec![(v.clone(), 1i8)];
    while let Some((w, s)) = queue.pop() {
        for i in 0..alg.rank {
            let img = alg.reflect(i, &w);
            match signs.get(&img.0) {
                Some(&t) => {
                    if t != -s {
                        return Err(Error::Internal(
                            "inconsistent orbit sign: weight not regular".into(),
                        ));
                    }
                }
                None => {
                    signs.insert(img.0.clone(), -s);
                    queue.push((img, -s));
                }
            }
        }
    }
    Ok(LaurentPoly::from_terms(
        signs.into_iter().map(|(e, s)| (e, Int::from(s))),
    ))
}

/// Weyl character formula: alternating sum at `m + rho` divided exactly by
/// the alternating sum at `rho`.
pub fn char_x(alg: &AlgebraData, m: &Weight) -> Result<CharacterX> {
    if !m.is_dominant() {
        return Err(Error::NotDominant(m.0.clone()));
    }
    let numer = alternating_orbit_sum(alg, &m.add(&alg.rho))?;
    let denom = alternating_orbit_sum(alg, &alg.rho)?;
    let poly = numer.exact_div(&denom)?;
    Ok(CharacterX {
        weight: m.clone(),
        poly,
    })
}

/// Applies the simple reflection `s_i` to every monomial exponent.
fn reflect_poly(alg: &AlgebraData, i: usize, p: &LaurentPoly) -> LaurentPoly {
    p.map_exponents(|e| {
        let mut w = e.to_vec();
        w.resize(alg.rank, 0);
        alg.reflect(i, &Weight(w)).0
    })
}

/// True if `p` is fixed by every simple reflection.
pub fn is_weyl_invariant(alg: &AlgebraData, p: &LaurentPoly) -> bool {
    (0..alg.rank).all(|i| reflect_poly(alg, i, p) == *p)
}

/// Integerized height key for picking maximal dominant terms: the levels
/// scaled to a common denominator, so comparisons stay in i64.
fn integer_levels(alg: &AlgebraData) -> Vec<i64> {
    let den: Int = alg
        .levels
        .iter()
        .fold(Int::one(), |acc, l| num_integer::lcm(acc, l.denom().clone()));
    alg.levels
        .iter()
        .map(|l| {
            (l * Rat::from_integer(den.clone()))
                .to_integer()
                .to_i64()
                .expect("level overflow")
        })
        .collect()
}

fn height_key(levels: &[i64], e: &[i32]) -> i64 {
    e.iter()
        .enumerate()
        .map(|(j, &x)| x as i64 * levels[j])
        .sum()
}

/// The maximal term of `p` under (height, lex). For a Weyl-invariant
/// polynomial this term is dominant (it is the dominant representative of
/// the highest orbit).
fn max_term<'a>(levels: &[i64], p: &'a LaurentPoly) -> Option<(&'a Vec<i32>, &'a Int)> {
    p.iter_terms().max_by(|a, b| {
        height_key(levels, a.0)
            .cmp(&height_key(levels, b.0))
            .then_with(|| a.0.cmp(b.0))
    })
}

/// Memoized monomials in the fundamental characters: products
/// `prod_k z_k(x)^{n_k}` built incrementally from smaller exponents.
struct FundamentalProducts<'a> {
    fund: Vec<LaurentPoly>,
    memo: HashMap<Vec<i32>, LaurentPoly>,
    alg: &'a AlgebraData,
}

impl<'a> FundamentalProducts<'a> {
    fn new(alg: &'a AlgebraData) -> Result<Self> {
        let fund = (0..alg.rank)
            .map(|k| {
                let mut lam = vec![0; alg.rank];
                lam[k] = 1;
                char_x(alg, &Weight(lam)).map(|c| c.poly)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut memo = HashMap::new();
        memo.insert(vec![0; alg.rank], LaurentPoly::one());
        Ok(FundamentalProducts { fund, memo, alg })
    }

    fn get(&mut self, n: &[i32]) -> LaurentPoly {
        let key = n.to_vec();
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let k = n.iter().position(|&x| x > 0).expect("nonzero exponent");
        let mut prev = key.clone();
        prev[k] -= 1;
        let base = self.get(&prev);
        let p = base.mul_ref(&self.fund[k]);
        self.memo.insert(key, p.clone());
        p
    }

    fn rank(&self) -> usize {
        self.alg.rank
    }
}

const REWRITE_STEP_CAP: usize = 200_000;

/// Rewrites a Weyl-invariant Laurent polynomial as a polynomial in the
/// fundamental characters.
///
/// Repeatedly extracts the maximal dominant exponent under (height, lex),
/// subtracts that multiple of the corresponding product of fundamental
/// characters, and recurses; the maximal weight strictly decreases, which
/// guarantees termination on genuine invariants. The step cap converts an
/// invariant violation into an error instead of a hang.
pub fn rewrite_to_z(alg: &AlgebraData, p: &LaurentPoly) -> Result<ZPoly> {
    if !is_weyl_invariant(alg, p) {
        return Err(Error::NotWeylInvariant);
    }
    let levels = integer_levels(alg);
    let mut prods = FundamentalProducts::new(alg)?;
    let mut rem = p.clone();
    let mut out = ZPoly::zero();
    let mut steps = 0;
    while let Some((e, c)) = max_term(&levels, &rem) {
        let mut n = e.clone();
        n.resize(prods.rank(), 0);
        if n.iter().any(|&x| x < 0) {
            return Err(Error::NotWeylInvariant);
        }
        let c = c.clone();
        let prod = prods.get(&n);
        rem.sub_assign_ref(&prod.scale(&c));
        out.insert_add(n, c);
        steps += 1;
        if steps > REWRITE_STEP_CAP {
            return Err(Error::NonTermination(steps));
        }
    }
    Ok(out)
}

/// Decomposes a Weyl-invariant Laurent polynomial into irreducible
/// characters by peeling highest weights: the list of (highest weight,
/// multiplicity) with all multiplicities positive.
pub fn decompose_characters(
    alg: &AlgebraData,
    p: &LaurentPoly,
) -> Result<Vec<(Weight, Int)>> {
    if !is_weyl_invariant(alg, p) {
        return Err(Error::NotWeylInvariant);
    }
    let levels = integer_levels(alg);
    let mut char_memo: HashMap<Vec<i32>, LaurentPoly> = HashMap::new();
    let mut rem = p.clone();
    let mut out = Vec::new();
    let mut steps = 0;
    while let Some((e, c)) = max_term(&levels, &rem) {
        let mut n = e.clone();
        n.resize(alg.rank, 0);
        let mult = c.clone();
        if n.iter().any(|&x| x < 0) || !mult.is_positive() {
            return Err(Error::NegativeMultiplicity {
                weight: n,
                mult: mult.to_string(),
            });
        }
        let ch = match char_memo.get(&n) {
            Some(ch) => ch.clone(),
            None => {
                let ch = char_x(alg, &Weight(n.clone()))?.poly;
                char_memo.insert(n.clone(), ch.clone());
                ch
            }
        };
        rem.sub_assign_ref(&ch.scale(&mult));
        out.push((Weight(n), mult));
        steps += 1;
        if steps > REWRITE_STEP_CAP {
            return Err(Error::NonTermination(steps));
        }
    }
    out.sort_by(|a, b| a.0 .0.cmp(&b.0 .0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_algebra;
    use crate::Family;

    fn w(c: &[i32]) -> Weight {
        Weight(c.to_vec())
    }

    fn mono(e: &[i32]) -> LaurentPoly {
        LaurentPoly::monomial(e.to_vec(), Int::one())
    }

    #[test]
    fn a1_fundamental_character() {
        let alg = build_algebra(Family::A, 1).unwrap();
        let ch = char_x(&alg, &w(&[1])).unwrap();
        let want = mono(&[1]) + mono(&[-1]);
        assert_eq!(ch.poly, want);
    }

    #[test]
    fn c2_second_fundamental_character() {
        let alg = build_algebra(Family::C, 2).unwrap();
        let ch = char_x(&alg, &w(&[0, 1])).unwrap();
        let want = LaurentPoly::one()
            + mono(&[0, 1])
            + mono(&[0, -1])
            + mono(&[2, -1])
            + mono(&[-2, 1]);
        assert_eq!(ch.poly, want);
    }

    #[test]
    fn trivial_character_is_one() {
        for (fam, rank) in [(Family::A, 2), (Family::B, 3), (Family::C, 2)] {
            let alg = build_algebra(fam, rank).unwrap();
            let ch = char_x(&alg, &Weight::zero(rank)).unwrap();
            assert!(ch.poly.is_one());
        }
    }

    #[test]
    fn char_x_rejects_non_dominant() {
        let alg = build_algebra(Family::A, 2).unwrap();
        assert!(char_x(&alg, &w(&[-1, 2])).is_err());
    }

    #[test]
    fn a2_rewrite_of_orbit_sum_is_z1() {
        let alg = build_algebra(Family::A, 2).unwrap();
        let p = mono(&[1, 0]) + mono(&[0, -1]) + mono(&[-1, 1]);
        let q = rewrite_to_z(&alg, &p).unwrap();
        assert_eq!(q, ZPoly::var(0));
    }

    #[test]
    fn rewrite_of_constant_is_constant() {
        let alg = build_algebra(Family::C, 2).unwrap();
        let p = LaurentPoly::constant(Int::from(7));
        assert_eq!(rewrite_to_z(&alg, &p).unwrap(), ZPoly::constant(Int::from(7)));
    }

    #[test]
    fn c2_rewrite_of_char_20() {
        let alg = build_algebra(Family::C, 2).unwrap();
        let ch = char_x(&alg, &w(&[2, 0])).unwrap();
        let q = rewrite_to_z(&alg, &ch.poly).unwrap();
        // z1^2 - z2 - 1
        let want = ZPoly::monomial(vec![2], Int::one())
            + ZPoly::monomial(vec![0, 1], Int::from(-1))
            + ZPoly::constant(Int::from(-1));
        assert_eq!(q, want);
    }

    #[test]
    fn rewrite_rejects_non_invariant() {
        let alg = build_algebra(Family::A, 2).unwrap();
        assert!(matches!(
            rewrite_to_z(&alg, &mono(&[1, 0])),
            Err(Error::NotWeylInvariant)
        ));
    }

    #[test]
    fn rewrite_round_trip() {
        // Substituting the fundamental characters back into the rewrite
        // reproduces the input exactly.
        for (fam, rank) in [(Family::A, 2), (Family::C, 2), (Family::B, 3)] {
            let alg = build_algebra(fam, rank).unwrap();
            let m = Weight(vec![1; rank]);
            let ch = char_x(&alg, &m).unwrap().poly;
            let q = rewrite_to_z(&alg, &ch).unwrap();
            let fund: Vec<LaurentPoly> = (0..rank)
                .map(|k| {
                    let mut lam = vec![0; rank];
                    lam[k] = 1;
                    char_x(&alg, &Weight(lam)).unwrap().poly
                })
                .collect();
            let back = q
                .substitute(&fund, |c| LaurentPoly::constant(c.clone()))
                .unwrap();
            assert_eq!(back, ch);
        }
    }

    #[test]
    fn rewrite_of_char_has_unit_leading_monomial() {
        let alg = build_algebra(Family::C, 2).unwrap();
        let levels = integer_levels(&alg);
        for m1 in 0..=3 {
            for m2 in 0..=3 {
                let m = w(&[m1, m2]);
                let q = rewrite_to_z(&alg, &char_x(&alg, &m).unwrap().poly).unwrap();
                let (e, c) = q
                    .iter_terms()
                    .max_by(|a, b| {
                        height_key(&levels, a.0)
                            .cmp(&height_key(&levels, b.0))
                            .then_with(|| a.0.cmp(b.0))
                    })
                    .unwrap();
                let mut full = e.clone();
                full.resize(alg.rank, 0);
                assert_eq!(full, m.0);
                assert!(c.is_one());
            }
        }
    }

    #[test]
    fn c2_tensor_square_decompositions() {
        let alg = build_algebra(Family::C, 2).unwrap();
        let z1 = char_x(&alg, &w(&[1, 0])).unwrap().poly;
        let got = decompose_characters(&alg, &z1.mul_ref(&z1)).unwrap();
        let want = vec![
            (w(&[0, 0]), Int::one()),
            (w(&[0, 1]), Int::one()),
            (w(&[2, 0]), Int::one()),
        ];
        assert_eq!(got, want);

        let z2 = char_x(&alg, &w(&[0, 1])).unwrap().poly;
        let got = decompose_characters(&alg, &z2.mul_ref(&z2)).unwrap();
        let want = vec![
            (w(&[0, 0]), Int::one()),
            (w(&[0, 2]), Int::one()),
            (w(&[2, 0]), Int::one()),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn single_character_decomposes_to_itself() {
        let alg = build_algebra(Family::A, 2).unwrap();
        let m = w(&[2, 1]);
        let ch = char_x(&alg, &m).unwrap().poly;
        let got = decompose_characters(&alg, &ch).unwrap();
        assert_eq!(got, vec![(m, Int::one())]);
    }

    #[test]
    fn decomposition_multiplicities_weigh_to_product_dimension() {
        use crate::lie::dimension;
        let alg = build_algebra(Family::C, 2).unwrap();
        for (a, b) in [([1, 0], [0, 1]), ([1, 1], [1, 0]), ([0, 1], [0, 1])] {
            let pa = char_x(&alg, &w(&a)).unwrap().poly;
            let pb = char_x(&alg, &w(&b)).unwrap().poly;
            let parts = decompose_characters(&alg, &pa.mul_ref(&pb)).unwrap();
            let total: Int = parts
                .iter()
                .map(|(mu, mult)| mult * dimension(&alg, mu).unwrap())
                .sum();
            let want = dimension(&alg, &w(&a)).unwrap() * dimension(&alg, &w(&b)).unwrap();
            assert_eq!(total, want);
        }
    }

    #[test]
    fn decompose_rejects_non_character_sums() {
        let alg = build_algebra(Family::A, 2).unwrap();
        // z1*z2 - 3 has a negative multiplicity at the trivial weight.
        let z1 = char_x(&alg, &w(&[1, 0])).unwrap().poly;
        let z2 = char_x(&alg, &w(&[0, 1])).unwrap().poly;
        let p = z1.mul_ref(&z2) + LaurentPoly::constant(Int::from(-5));
        assert!(matches!(
            decompose_characters(&alg, &p),
            Err(Error::NegativeMultiplicity { .. })
        ));
    }

    #[test]
    fn character_values_at_one_give_dimension() {
        use crate::lie::dimension;
        for (fam, rank, max) in [(Family::A, 2, 3), (Family::C, 2, 3), (Family::B, 3, 1)] {
            let alg = build_algebra(fam, rank).unwrap();
            let mut stack = vec![vec![]];
            for _ in 0..rank {
                let mut next = Vec::new();
                for p in &stack {
                    for v in 0..=max {
                        let mut q = p.clone();
                        q.push(v);
                        next.push(q);
                    }
                }
                stack = next;
            }
            for m in stack {
                let m = Weight(m);
                let ch = char_x(&alg, &m).unwrap();
                assert_eq!(ch.poly.sum_coeffs(), dimension(&alg, &m).unwrap());
            }
        }
    }
}
