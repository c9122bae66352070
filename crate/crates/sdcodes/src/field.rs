//! Exact arithmetic in F_q for any prime power q = p^m.
//!
//! Elements are stored in the canonical integer encoding
//! e = sum(coeffs[i] * p^i) in [0, q), where `coeffs` are the
//! polynomial-basis coordinates over F_p. This encoding is also the wire
//! format used by the JSON code files and the CLI.
//!
//! # Conventions
//!
//! - The modulus of an extension field is the lexicographically smallest
//!   monic irreducible polynomial of degree m over F_p, comparing
//!   coefficients from the constant term upward.
//! - All "find an element" searches (square roots, sums of squares) return
//!   the smallest solution in encoding order, so results are reproducible
//!   byte for byte.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Fields larger than this are rejected; multiplication is schoolbook
/// polynomial arithmetic and element searches are exhaustive scans, both of
/// which are only sensible at desk scale.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Lookup tables are built for fields up to this order.
const TABLE_LIMIT: u64 = 256;

/// An element of a finite field, as its canonical integer encoding in [0, q).
///
/// The encoding 0 is the additive identity and 1 the multiplicative identity.
/// Elements carry no field pointer; all arithmetic goes through
/// [`FiniteField`], and callers must not mix elements of different fields.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn encoding(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldRepr {
    p: u64,
    m: u32,
    q: u64,
    /// Monic irreducible modulus over F_p, coefficients low-to-high,
    /// length m + 1. For m = 1 this is the polynomial x.
    modulus: Vec<u64>,
    mul_table: Option<Vec<u64>>,
    add_table: Option<Vec<u64>>,
    inv_table: Option<Vec<u64>>,
}

/// The finite field F_q, q = p^m. Cheap to clone and safe to share across
/// threads; all operations are pure.
#[derive(Clone)]
pub struct FiniteField {
    repr: Arc<FieldRepr>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is chosen deterministically from (p, m).
        self.repr.p == other.repr.p && self.repr.m == other.repr.m
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.repr.q)
    }
}

/// Decompose q as p^m with p prime, if possible.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest == 1 {
        Some((p, m))
    } else {
        None
    }
}

pub fn is_prime(n: u64) -> bool {
    matches!(prime_power_decomposition(n), Some((_, 1)))
}

impl FiniteField {
    /// Construct F_{p^m}. The modulus is the lexicographically smallest monic
    /// irreducible of degree m over F_p (constant coefficient compared first).
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::DegreeOutOfRange(format!("m = {m}, need m >= 1")));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| {
                Error::DegreeOutOfRange(format!(
                    "{p}^{m} exceeds the supported field order {MAX_FIELD_ORDER}"
                ))
            })?;

        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            let prime = FiniteField::from_repr(p, 1, p, vec![0, 1]);
            find_modulus(&prime, m)
        };

        let mut field = FiniteField::from_repr(p, m, q, modulus);
        if q <= TABLE_LIMIT {
            let repr = Arc::get_mut(&mut field.repr).expect("fresh field");
            let (mul, add, inv) = build_tables(repr);
            repr.mul_table = Some(mul);
            repr.add_table = Some(add);
            repr.inv_table = Some(inv);
        }
        Ok(field)
    }

    /// Construct F_q from the field order, factoring q = p^m.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power_decomposition(q).ok_or(Error::NotPrimePower(q))?;
        FiniteField::new(p, m)
    }

    fn from_repr(p: u64, m: u32, q: u64, modulus: Vec<u64>) -> Self {
        FiniteField {
            repr: Arc::new(FieldRepr {
                p,
                m,
                q,
                modulus,
                mul_table: None,
                add_table: None,
                inv_table: None,
            }),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.repr.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.repr.m
    }

    pub fn order(&self) -> u64 {
        self.repr.q
    }

    /// Modulus coefficients over F_p, low-to-high (length m + 1, monic).
    pub fn modulus(&self) -> &[u64] {
        &self.repr.modulus
    }

    /// Validate an integer encoding and wrap it as an element.
    pub fn element(&self, e: u64) -> Result<Elem> {
        if e < self.repr.q {
            Ok(Elem(e))
        } else {
            Err(Error::FieldMismatch {
                value: e,
                q: self.repr.q,
            })
        }
    }

    /// The element with the given polynomial-basis coordinates (low-to-high,
    /// values reduced mod p; missing high coordinates are zero).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Elem {
        let p = self.repr.p;
        let mut e = 0;
        for i in (0..self.repr.m as usize).rev() {
            let c = coeffs.get(i).copied().unwrap_or(0) % p;
            e = e * p + c;
        }
        Elem(e)
    }

    /// Polynomial-basis coordinates of an element, low-to-high, length m.
    pub fn to_coeffs(&self, a: Elem) -> Vec<u64> {
        let p = self.repr.p;
        let mut e = a.0;
        (0..self.repr.m)
            .map(|_| {
                let c = e % p;
                e /= p;
                c
            })
            .collect()
    }

    /// All q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.repr.q).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if let Some(t) = &self.repr.add_table {
            return Elem(t[(a.0 * self.repr.q + b.0) as usize]);
        }
        self.add_generic(a, b)
    }

    fn add_generic(&self, a: Elem, b: Elem) -> Elem {
        let p = self.repr.p;
        if self.repr.m == 1 {
            return Elem((a.0 + b.0) % p);
        }
        let mut e = 0;
        let (mut x, mut y) = (a.0, b.0);
        let mut base = 1;
        for _ in 0..self.repr.m {
            e += ((x % p + y % p) % p) * base;
            x /= p;
            y /= p;
            base *= p;
        }
        Elem(e)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.repr.p;
        if self.repr.m == 1 {
            return Elem((p - a.0) % p);
        }
        let mut e = 0;
        let mut x = a.0;
        let mut base = 1;
        for _ in 0..self.repr.m {
            e += ((p - x % p) % p) * base;
            x /= p;
            base *= p;
        }
        Elem(e)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if let Some(t) = &self.repr.mul_table {
            return Elem(t[(a.0 * self.repr.q + b.0) as usize]);
        }
        self.mul_generic(a, b)
    }

    fn mul_generic(&self, a: Elem, b: Elem) -> Elem {
        let p = self.repr.p;
        if self.repr.m == 1 {
            return Elem(a.0 * b.0 % p);
        }
        let m = self.repr.m as usize;
        let x = self.to_coeffs(a);
        let y = self.to_coeffs(b);
        // Schoolbook product; digit products stay far below u64 range.
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] += xi * yj;
            }
        }
        for c in prod.iter_mut() {
            *c %= p;
        }
        // Reduce by the monic modulus.
        let md = &self.repr.modulus;
        for i in (m..2 * m - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let sub = c * md[j] % p;
                prod[i - m + j] = (prod[i - m + j] + p - sub) % p;
            }
        }
        self.from_coeffs(&prod[..m])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.repr.inv_table {
            return Ok(Elem(t[a.0 as usize]));
        }
        // Fermat: a^(q-2) for a != 0.
        Ok(self.pow(a, self.repr.q - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.repr.p)
    }

    /// Smallest square root of `a` in encoding order, if `a` is a square.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(b, b) == a)
    }

    /// An element with square -1: the smallest such in encoding order, or 1
    /// when q is even. Fails exactly when q = 3 mod 4.
    pub fn sqrt_of_minus_one(&self) -> Result<Elem> {
        let q = self.repr.q;
        if q % 2 == 0 {
            return Ok(Elem::ONE);
        }
        if q % 4 == 3 {
            return Err(Error::NoSolution(q));
        }
        let minus_one = self.neg(Elem::ONE);
        Ok(self
            .sqrt(minus_one)
            .expect("-1 is a square when q = 1 mod 4"))
    }

    /// The lexicographically smallest pair (a, b) with a^2 + b^2 + 1 = 0.
    /// Only defined for q = 3 mod 4 (the other cases use a square root of -1
    /// instead). Existence follows from a counting argument: the sets
    /// {1 + a^2} and {-b^2} each have more than q/2 elements.
    pub fn solve_alpha_beta(&self) -> Result<(Elem, Elem)> {
        let q = self.repr.q;
        if q % 4 != 3 {
            return Err(Error::WrongResidueClass(q));
        }
        // smallest_root[e] = smallest b with b^2 = e
        let mut smallest_root: Vec<Option<Elem>> = vec![None; q as usize];
        for b in self.elements() {
            let sq = self.mul(b, b);
            if smallest_root[sq.0 as usize].is_none() {
                smallest_root[sq.0 as usize] = Some(b);
            }
        }
        for a in self.elements() {
            let target = self.neg(self.add(Elem::ONE, self.mul(a, a)));
            if let Some(b) = smallest_root[target.0 as usize] {
                return Ok((a, b));
            }
        }
        unreachable!("a^2 + b^2 + 1 = 0 is always solvable over a finite field")
    }
}

/// Lexicographically smallest monic irreducible of degree m over the prime
/// field, comparing the constant coefficient first.
fn find_modulus(prime: &FiniteField, m: u32) -> Vec<u64> {
    for cand in Poly::monic_polys(prime, m as usize) {
        if cand.is_irreducible(prime) {
            return cand.coeffs().iter().map(|c| c.encoding()).collect();
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn build_tables(repr: &FieldRepr) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let q = repr.q as usize;
    let field = FiniteField {
        repr: Arc::new(FieldRepr {
            p: repr.p,
            m: repr.m,
            q: repr.q,
            modulus: repr.modulus.clone(),
            mul_table: None,
            add_table: None,
            inv_table: None,
        }),
    };
    let mut mul = vec![0u64; q * q];
    let mut add = vec![0u64; q * q];
    let mut inv = vec![0u64; q];
    for a in 0..q as u64 {
        for b in 0..q as u64 {
            mul[(a * repr.q + b) as usize] = field.mul_generic(Elem(a), Elem(b)).0;
            add[(a * repr.q + b) as usize] = field.add_generic(Elem(a), Elem(b)).0;
        }
    }
    for a in 1..q as u64 {
        inv[a as usize] = field.pow(Elem(a), repr.q - 2).0;
    }
    (mul, add, inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> FiniteField {
        FiniteField::new(2, 2).unwrap()
    }

    fn f5() -> FiniteField {
        FiniteField::new(5, 1).unwrap()
    }

    /// Brute-force reducibility check over F_2, independent of the library's
    /// irreducibility test: a quadratic is reducible iff it has a root.
    fn f2_quadratic_has_root(c0: u64, c1: u64) -> bool {
        (0..2u64).any(|x| (c0 + c1 * x + x * x) % 2 == 0)
    }

    #[test]
    fn modulus_of_f4_is_smallest_irreducible_quadratic() {
        // Oracle: scan the 4 monic quadratics over F_2 in lex order
        // (constant coefficient first) and keep the first without a root.
        let mut expected = None;
        for c0 in 0..2u64 {
            for c1 in 0..2u64 {
                if !f2_quadratic_has_root(c0, c1) {
                    expected = Some(vec![c0, c1, 1]);
                    break;
                }
            }
            if expected.is_some() {
                break;
            }
        }
        assert_eq!(expected.unwrap(), vec![1, 1, 1]); // x^2 + x + 1
        assert_eq!(f4().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn prime_field_has_trivial_modulus() {
        let f = f5();
        assert_eq!(f.order(), 5);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(Elem(3), Elem(4)), Elem(2));
    }

    #[test]
    fn composite_characteristic_is_rejected() {
        assert_eq!(FiniteField::new(6, 1).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(
            FiniteField::new(5, 0).unwrap_err(),
            Error::DegreeOutOfRange(_)
        ));
    }

    #[test]
    fn f4_generator_squares_to_its_successor() {
        // With modulus x^2 + x + 1: w * w = w + 1, i.e. 2 * 2 = 3.
        let f = f4();
        assert_eq!(f.mul(Elem(2), Elem(2)), Elem(3));
        // and w * (w + 1) = w^2 + w = 1
        assert_eq!(f.mul(Elem(2), Elem(3)), Elem(1));
    }

    #[test]
    fn inverse_in_f5() {
        assert_eq!(f5().inv(Elem(2)).unwrap(), Elem(3)); // 2 * 3 = 6 = 1 mod 5
        assert_eq!(f5().inv(Elem(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn additive_identity() {
        for f in [f4(), f5(), FiniteField::new(3, 2).unwrap()] {
            for x in f.elements() {
                assert_eq!(f.add(x, Elem::ZERO), x);
                assert_eq!(f.mul(x, Elem::ONE), x);
            }
        }
    }

    #[test]
    fn encoding_round_trips() {
        for f in [f4(), FiniteField::new(3, 3).unwrap(), f5()] {
            for x in f.elements() {
                assert_eq!(f.from_coeffs(&f.to_coeffs(x)), x);
            }
        }
    }

    #[test]
    fn sqrt_of_minus_one_examples() {
        assert_eq!(f5().sqrt_of_minus_one().unwrap(), Elem(2)); // 4 = -1 mod 5
        let f13 = FiniteField::new(13, 1).unwrap();
        assert_eq!(f13.sqrt_of_minus_one().unwrap(), Elem(5)); // 25 = -1 mod 13
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(f7.sqrt_of_minus_one(), Err(Error::NoSolution(7)));
        // q even: the answer is 1 by convention
        assert_eq!(f4().sqrt_of_minus_one().unwrap(), Elem(1));
    }

    #[test]
    fn sqrt_of_minus_one_actually_squares_to_minus_one() {
        for q in [4u64, 5, 8, 9, 13, 16, 25] {
            let f = FiniteField::with_order(q).unwrap();
            let a = f.sqrt_of_minus_one().unwrap();
            assert_eq!(f.add(f.mul(a, a), Elem::ONE), Elem::ZERO, "q = {q}");
        }
    }

    #[test]
    fn alpha_beta_examples() {
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(f3.solve_alpha_beta().unwrap(), (Elem(1), Elem(1)));
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(f7.solve_alpha_beta().unwrap(), (Elem(2), Elem(3)));
        let f11 = FiniteField::new(11, 1).unwrap();
        assert_eq!(f11.solve_alpha_beta().unwrap(), (Elem(1), Elem(3)));
        assert_eq!(
            f5().solve_alpha_beta(),
            Err(Error::WrongResidueClass(5))
        );
    }

    #[test]
    fn alpha_beta_satisfies_the_equation() {
        for q in [3u64, 7, 11, 19, 23, 27] {
            let f = FiniteField::with_order(q).unwrap();
            let (a, b) = f.solve_alpha_beta().unwrap();
            let s = f.add(f.add(f.mul(a, a), f.mul(b, b)), Elem::ONE);
            assert_eq!(s, Elem::ZERO, "q = {q}");
        }
    }

    #[test]
    fn field_axioms_on_seeded_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in [2u64, 4, 5, 8, 9, 25, 27, 49] {
            let f = FiniteField::with_order(q).unwrap();
            for _ in 0..1000 {
                let a = Elem(rng.random_range(0..q));
                let b = Elem(rng.random_range(0..q));
                let c = Elem(rng.random_range(0..q));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(
                    f.mul(a, f.add(b, c)),
                    f.add(f.mul(a, b), f.mul(a, c))
                );
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
            }
        }
    }

    #[test]
    fn multiplication_by_nonzero_is_a_permutation() {
        for q in [4u64, 9, 16] {
            let f = FiniteField::with_order(q).unwrap();
            for g in f.elements().skip(1) {
                let mut seen = vec![false; q as usize];
                for x in f.elements() {
                    let y = f.mul(x, g);
                    assert!(!seen[y.0 as usize]);
                    seen[y.0 as usize] = true;
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for q in [4u64, 8, 9, 27, 16] {
            let f = FiniteField::with_order(q).unwrap();
            for _ in 0..1000 {
                let a = Elem(rng.random_range(0..q));
                let b = Elem(rng.random_range(0..q));
                assert_eq!(
                    f.frobenius(f.add(a, b)),
                    f.add(f.frobenius(a), f.frobenius(b))
                );
            }
        }
    }

    #[test]
    fn table_and_generic_paths_agree() {
        // F_256 sits at the table limit; F_289 = 17^2 is just above it.
        let small = FiniteField::new(2, 8).unwrap();
        for (a, b) in [(3u64, 7u64), (100, 200), (255, 255), (17, 0)] {
            assert_eq!(
                small.mul(Elem(a), Elem(b)),
                small.mul_generic(Elem(a), Elem(b))
            );
        }
        let big = FiniteField::new(17, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = Elem(rng.random_range(0..289));
            let b = Elem(rng.random_range(0..289));
            if !a.is_zero() {
                let inv = big.inv(a).unwrap();
                assert_eq!(big.mul(a, inv), Elem::ONE);
            }
            assert_eq!(big.mul(a, b), big.mul(b, a));
        }
    }

    #[test]
    fn prime_power_decomposition_examples() {
        assert_eq!(prime_power_decomposition(64), Some((2, 6)));
        assert_eq!(prime_power_decomposition(125), Some((5, 3)));
        assert_eq!(prime_power_decomposition(7), Some((7, 1)));
        assert_eq!(prime_power_decomposition(12), None);
        assert_eq!(prime_power_decomposition(1), None);
    }
}
