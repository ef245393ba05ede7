//! Exact arithmetic in small finite fields GF(p^e), p^e ≤ 64.
//!
//! Extension fields use a fixed irreducible modulus per field size so that
//! element representations (and therefore file formats and test vectors) are
//! bit-exact across runs. Multiplication and inversion are backed by
//! precomputed q×q lookup tables, which dominates Macaulay-matrix row
//! reduction cost at these sizes.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

/// Largest supported field size.
pub const MAX_Q: u64 = 64;
/// Largest supported extension degree.
pub const MAX_E: u32 = 4;

/// An element of GF(p^e), stored as its integer representative in `[0, q)`.
///
/// The representative encodes the base-p digit vector of the element: digit i
/// is the coefficient of the i-th power of the residue class of t modulo the
/// field's modulus. Elements carry no field pointer; all arithmetic goes
/// through a [`Field`], which validates that representatives are in range.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FieldElement(u8);

impl FieldElement {
    /// The integer representative in `[0, q)`.
    #[inline]
    pub fn rep(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Errors raised when constructing a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// p is not prime.
    NotPrime(u64),
    /// The pair (p, e) is outside the supported table.
    Unsupported { p: u64, e: u32 },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::Unsupported { p, e } => {
                write!(f, "unsupported field GF({p}^{e}); need p prime, e <= 4, p^e <= 64, and a modulus table entry for e > 1")
            }
        }
    }
}

impl std::error::Error for FieldError {}

/// The fixed modulus table for supported extension fields.
///
/// This table is normative: GF(4): t^2+t+1, GF(8): t^3+t+1, GF(9): t^2+1,
/// GF(16): t^4+t+1, GF(25): t^2+t+1, GF(27): t^3+2t+1. Coefficient lists are
/// dense, constant term first.
const MODULUS_TABLE: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[1, 1, 1]),
];

struct FieldRepr {
    p: u64,
    e: u32,
    q: u64,
    /// Dense coefficient list of the monic modulus, constant term first (length e+1).
    modulus: Vec<u64>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// A small finite field GF(p^e) with table-backed arithmetic.
///
/// Cloning is cheap (shared tables). A `Field` is immutable after
/// construction and safe to share across threads; all operations are pure.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over GF(p) on dense coefficient vectors, constant
/// term first. Used only during table construction.
mod gfp_poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of a modulo the monic polynomial m.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        assert!(m.len() >= 2, "modulus must have degree >= 1");
        assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (k, &mk) in m.iter().enumerate() {
                let idx = shift + k;
                let sub = (lead * mk) % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    /// Irreducibility over GF(p) by trial division with every monic
    /// polynomial of degree 1..=deg/2.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let deg = m.len() - 1;
        if deg == 0 {
            return false;
        }
        if deg == 1 {
            return true;
        }
        for d in 1..=deg / 2 {
            // Enumerate monic divisor candidates of degree d.
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut cand = Vec::with_capacity(d + 1);
                let mut v = idx;
                for _ in 0..d {
                    cand.push(v % p);
                    v /= p;
                }
                cand.push(1);
                if rem(m, &cand, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl Field {
    /// Constructs GF(p^e) with the modulus fixed by the built-in table.
    ///
    /// Supported: p prime, 1 ≤ e ≤ 4, p^e ≤ 64, and for e > 1 the pair must
    /// appear in the modulus table. Deterministic: the same (p, e) always
    /// yields the same element encoding.
    pub fn new(p: u64, e: u32) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e < 1 || e > MAX_E || p.checked_pow(e).map_or(true, |q| q > MAX_Q) {
            return Err(FieldError::Unsupported { p, e });
        }
        let modulus: Vec<u64> = if e == 1 {
            vec![0, 1]
        } else {
            match MODULUS_TABLE
                .iter()
                .find(|&&(tp, te, _)| tp == p && te == e)
            {
                Some(&(_, _, m)) => m.to_vec(),
                None => return Err(FieldError::Unsupported { p, e }),
            }
        };
        assert!(
            gfp_poly::is_irreducible(&modulus, p),
            "modulus table entry for GF({p}^{e}) is not irreducible"
        );
        Ok(Field(Arc::new(FieldRepr::build(p, e, modulus))))
    }

    /// Constructs the field of the given size q = p^e.
    pub fn of_size(q: u64) -> Result<Field, FieldError> {
        for p in 2..=q {
            if is_prime(p) && q % p == 0 {
                let mut e = 0u32;
                let mut t = q;
                while t % p == 0 {
                    t /= p;
                    e += 1;
                }
                if t != 1 {
                    return Err(FieldError::Unsupported { p, e });
                }
                return Field::new(p, e);
            }
        }
        Err(FieldError::Unsupported { p: q, e: 1 })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.0.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }

    /// Field size q = p^e.
    #[inline]
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Dense coefficient list of the modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The element with the given integer representative.
    ///
    /// Panics if `rep >= q`.
    #[inline]
    pub fn element(&self, rep: u64) -> FieldElement {
        assert!(rep < self.0.q, "representative {rep} out of range for GF({})", self.0.q);
        FieldElement(rep as u8)
    }

    /// Iterates over all q elements, in representative order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q as u8).map(FieldElement)
    }

    #[inline]
    fn check(&self, a: FieldElement) -> usize {
        let r = a.0 as usize;
        assert!(r < self.0.q as usize, "element {} not in GF({})", a.0, self.0.q);
        r
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (i, j) = (self.check(a), self.check(b));
        FieldElement(self.0.add[i * self.0.q as usize + j])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.0.neg[self.check(a)])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (i, j) = (self.check(a), self.check(b));
        FieldElement(self.0.mul[i * self.0.q as usize + j])
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        let i = self.check(a);
        assert!(i != 0, "inversion of zero in GF({})", self.0.q);
        FieldElement(self.0.inv[i])
    }

    /// Panics if `b` is zero.
    #[inline]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    /// a^k by square-and-multiply; a^0 = 1 for every a.
    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Uniform sample over all q elements; reproducible given a seeded RNG.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.0.q) as u8)
    }

    /// Raw multiplication on representatives, for row-reduction inner loops.
    #[inline]
    pub(crate) fn mul_raw(&self, a: u8, b: u8) -> u8 {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u8, b: u8) -> u8 {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.0.inv[a as usize]
    }
}

impl FieldRepr {
    fn build(p: u64, e: u32, modulus: Vec<u64>) -> FieldRepr {
        let q = p.pow(e);
        let qs = q as usize;
        let to_digits = |rep: u64| -> Vec<u64> {
            let mut v = Vec::with_capacity(e as usize);
            let mut r = rep;
            for _ in 0..e {
                v.push(r % p);
                r /= p;
            }
            v
        };
        let from_digits = |d: &[u64]| -> u64 {
            let mut rep = 0u64;
            for &di in d.iter().rev() {
                rep = rep * p + di;
            }
            rep
        };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        for a in 0..q {
            let da = to_digits(a);
            let negd: Vec<u64> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = from_digits(&negd) as u8;
            for b in 0..q {
                let db = to_digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_digits(&sum) as u8;
                let mut prod = gfp_poly::mul(&da, &db, p);
                prod = gfp_poly::rem(&prod, &modulus, p);
                prod.resize(e as usize, 0);
                mul[(a * q + b) as usize] = from_digits(&prod) as u8;
            }
        }
        let mut inv = vec![0u8; qs];
        for a in 1..qs {
            let mut found = false;
            for b in 1..qs {
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u8;
                    found = true;
                    break;
                }
            }
            assert!(found, "no inverse for {a} in GF({q}); modulus not irreducible?");
        }
        FieldRepr {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn supported_fields() -> Vec<Field> {
        let mut out = Vec::new();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            out.push(Field::new(p, 1).unwrap());
        }
        for &(p, e, _) in MODULUS_TABLE {
            out.push(Field::new(p, e).unwrap());
        }
        out
    }

    #[test]
    fn construction_table() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.q(), 4);
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1), Err(FieldError::NotPrime(4)));
        assert_eq!(Field::new(2, 5), Err(FieldError::Unsupported { p: 2, e: 5 }));
        assert_eq!(Field::new(7, 2), Err(FieldError::Unsupported { p: 7, e: 2 }));
        assert_eq!(Field::new(3, 4), Err(FieldError::Unsupported { p: 3, e: 4 }));
        assert!(Field::of_size(9).is_ok());
        assert!(Field::of_size(6).is_err());
    }

    #[test]
    fn gf2_characteristic() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.add(f.one(), f.one()), f.zero());
    }

    #[test]
    fn gf4_generator_square() {
        // g = rep 2 (the class of t); t^2 = t + 1 mod t^2+t+1, i.e. rep 3.
        let f = Field::new(2, 2).unwrap();
        let g = f.element(2);
        assert_eq!(f.mul(g, g), f.element(3));
    }

    #[test]
    fn gf9_inverse_of_two() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.inv(f.element(2)), f.element(2));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for f in supported_fields().iter().filter(|f| f.q() <= 16) {
            let q = f.q();
            let els: Vec<FieldElement> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a)), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            // No zero divisors.
            for &a in &els {
                for &b in &els {
                    if !a.is_zero() && !b.is_zero() {
                        assert!(!f.mul(a, b).is_zero(), "zero divisor in GF({q})");
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_every_element() {
        for f in supported_fields() {
            for a in f.elements() {
                assert_eq!(f.pow(a, f.q()), a, "a^q != a in GF({})", f.q());
            }
        }
    }

    #[test]
    fn inverse_exhaustive() {
        for f in supported_fields() {
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(f.inv(a), a), f.one());
            }
        }
    }

    #[test]
    #[should_panic(expected = "inversion of zero")]
    fn inversion_of_zero_panics() {
        let f = Field::new(2, 1).unwrap();
        f.inv(f.zero());
    }

    #[test]
    fn sampling_is_reproducible_and_in_range() {
        let f = Field::new(2, 2).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(42);
        let mut r2 = ChaCha8Rng::seed_from_u64(42);
        let s1: Vec<FieldElement> = (0..100).map(|_| f.sample_uniform(&mut r1)).collect();
        let s2: Vec<FieldElement> = (0..100).map(|_| f.sample_uniform(&mut r2)).collect();
        assert_eq!(s1, s2);
        assert!(s1.iter().all(|x| x.rep() < 4));
    }

    #[test]
    fn sampling_is_close_to_uniform() {
        // Chi-square style check: each element frequency within 5 sigma of 1/q.
        for q in [2u64, 4, 9] {
            let f = Field::of_size(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let n = 10_000usize;
            let mut counts = vec![0usize; q as usize];
            for _ in 0..n {
                counts[f.sample_uniform(&mut rng).rep() as usize] += 1;
            }
            let expect = n as f64 / q as f64;
            let sigma = (n as f64 * (1.0 / q as f64) * (1.0 - 1.0 / q as f64)).sqrt();
            for (i, &c) in counts.iter().enumerate() {
                assert!(
                    (c as f64 - expect).abs() < 5.0 * sigma,
                    "element {i} of GF({q}) drawn {c} times, expected {expect}"
                );
            }
        }
    }
}
