//! Desk-scale instance generators: uniform random systems, LPP-sharp
//! monomial systems, HFEv−-style (GeMSS-like) and Rainbow-style public keys,
//! plus the pipeline operations that turn a public key into the system an
//! attacker would solve: disguise by invertible linear maps, subtracting a
//! target and fixing variables to make the system square, and appending the
//! field equations.
//!
//! Generators are pure functions of (params, rng state): replaying a seeded
//! RNG reproduces the instance bit for bit.

use std::fmt;

use rand::Rng;

use crate::field::{Field, FieldElement};
use crate::groebner::solve_system;
use crate::poly::{
    monomials_of_degree, monomials_up_to_degree, Monomial, PolySystem, Polynomial, TermOrder,
};

/// Parameter errors from the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeError(pub String);

impl fmt::Display for SchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for SchemeError {}

/// GF(2^n) arithmetic on bit-packed polynomials, n <= 24. Elements are u64
/// bit masks, bit i the coefficient of t^i; the modulus is the smallest
/// irreducible polynomial of degree n in the integer encoding, found by
/// search at construction (deterministic).
mod gf2x {
    /// Carry-less product of two GF(2) polynomials.
    fn clmul(a: u64, b: u64) -> u64 {
        let mut acc = 0u64;
        let mut a = a;
        let mut shift = 0;
        while a != 0 {
            let tz = a.trailing_zeros();
            shift += tz;
            acc ^= b << shift;
            a >>= tz + 1;
            shift += 1;
        }
        acc
    }

    fn degree(p: u64) -> i32 {
        63 - p.leading_zeros() as i32
    }

    fn rem(mut a: u64, m: u64) -> u64 {
        let dm = degree(m);
        while degree(a) >= dm && a != 0 {
            a ^= m << (degree(a) - dm);
        }
        a
    }

    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = rem(a, b);
            a = b;
            b = r;
        }
        a
    }

    fn mulmod(a: u64, b: u64, m: u64) -> u64 {
        rem(clmul(a, b), m)
    }

    /// x^(2^k) mod m by repeated squaring.
    fn frob(mut x: u64, k: u32, m: u64) -> u64 {
        for _ in 0..k {
            x = mulmod(x, x, m);
        }
        x
    }

    fn is_irreducible(m: u64) -> bool {
        let n = degree(m) as u32;
        if n == 0 {
            return false;
        }
        // x^(2^n) = x mod m, and x^(2^(n/p)) - x coprime to m for p | n.
        if frob(0b10, n, m) != 0b10 {
            return false;
        }
        let mut primes = Vec::new();
        let mut t = n;
        let mut d = 2;
        while d * d <= t {
            if t % d == 0 {
                primes.push(d);
                while t % d == 0 {
                    t /= d;
                }
            }
            d += 1;
        }
        if t > 1 {
            primes.push(t);
        }
        for p in primes {
            let y = frob(0b10, n / p, m) ^ 0b10;
            if gcd(m, y) != 1 {
                return false;
            }
        }
        true
    }

    /// The field GF(2^n) with its fixed modulus.
    #[derive(Clone, Copy, Debug)]
    pub struct Gf2Ext {
        pub n: u32,
        pub modulus: u64,
    }

    impl Gf2Ext {
        /// Smallest irreducible of degree n in the integer encoding.
        pub fn new(n: u32) -> Gf2Ext {
            assert!((2..=24).contains(&n), "extension degree out of range");
            let mut m = (1u64 << n) | 1;
            loop {
                if is_irreducible(m) {
                    return Gf2Ext { n, modulus: m };
                }
                m += 2;
            }
        }

        pub fn mul(&self, a: u64, b: u64) -> u64 {
            mulmod(a, b, self.modulus)
        }

        pub fn pow(&self, mut base: u64, mut k: u64) -> u64 {
            let mut acc = 1u64;
            while k > 0 {
                if k & 1 == 1 {
                    acc = self.mul(acc, base);
                }
                base = self.mul(base, base);
                k >>= 1;
            }
            acc
        }

        pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u64 {
            rng.gen_range(0..(1u64 << self.n))
        }
    }

}

/// Square matrices over a small field, just enough for key generation.
mod linalg {
    use super::{Field, FieldElement};
    use rand::Rng;

    pub type Matrix = Vec<Vec<FieldElement>>;

    pub fn mat_vec(field: &Field, m: &Matrix, v: &[FieldElement]) -> Vec<FieldElement> {
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn invert(field: &Field, m: &Matrix) -> Option<Matrix> {
        let n = m.len();
        let mut a: Vec<Vec<FieldElement>> = m.clone();
        let mut inv: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = field.inv(a[col][col]);
            for j in 0..n {
                a[col][j] = field.mul(a[col][j], scale);
                inv[col][j] = field.mul(inv[col][j], scale);
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col];
                    for j in 0..n {
                        let t = field.mul(f, a[col][j]);
                        a[r][j] = field.sub(a[r][j], t);
                        let t = field.mul(f, inv[col][j]);
                        inv[r][j] = field.sub(inv[r][j], t);
                    }
                }
            }
        }
        Some(inv)
    }

    /// Rejection-samples a uniformly random invertible matrix.
    pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        loop {
            let m: Matrix = (0..n)
                .map(|_| (0..n).map(|_| field.sample_uniform(rng)).collect())
                .collect();
            if invert(field, &m).is_some() {
                return m;
            }
        }
    }
}

pub use linalg::Matrix;

/// Uniform random system: each polynomial dense-uniform over the monomials
/// of degree <= d_i, with the top part resampled until it is nonzero so the
/// degree is exactly d_i.
pub fn gen_random_system<R: Rng + ?Sized>(
    field: &Field,
    nvars: usize,
    degrees: &[u32],
    rng: &mut R,
) -> PolySystem {
    assert!(!degrees.is_empty(), "empty degree list");
    let polys: Vec<Polynomial> = degrees
        .iter()
        .map(|&d| {
            let mut p = Polynomial::zero(field, nvars);
            for m in monomials_up_to_degree(nvars, d.saturating_sub(1), TermOrder::Grevlex) {
                p.add_term(m, field.sample_uniform(rng));
            }
            loop {
                let mut top = Polynomial::zero(field, nvars);
                for m in monomials_of_degree(nvars, d, TermOrder::Grevlex) {
                    top.add_term(m, field.sample_uniform(rng));
                }
                if !top.is_zero() || d == 0 {
                    p = p.add(&top);
                    break;
                }
            }
            p
        })
        .collect();
    PolySystem::new(polys).with_meta("scheme", "random")
}

/// The sharp monomial system for the equal-degree bound: the pure powers
/// x_i^D together with the first m - n degree-D lex-segment monomials that
/// are not pure powers.
pub fn gen_lpp_sharp_system(
    field: &Field,
    nvars: usize,
    m: u64,
    d: u32,
) -> Result<PolySystem, SchemeError> {
    let n = nvars as u64;
    if m < n {
        return Err(SchemeError(format!("need m >= n, got m = {m}, n = {n}")));
    }
    let mut gens: Vec<Monomial> = (0..nvars)
        .map(|i| {
            let mut e = vec![0u16; nvars];
            e[i] = d as u16;
            Monomial::new(e)
        })
        .collect();
    let extra = (m - n) as usize;
    let segment: Vec<Monomial> = monomials_of_degree(nvars, d, TermOrder::Lex)
        .into_iter()
        .filter(|mm| mm.exps().iter().all(|&e| (e as u32) < d))
        .take(extra)
        .collect();
    if segment.len() < extra {
        return Err(SchemeError(format!(
            "m = {m} exceeds the number of degree-{d} monomials in {nvars} variables"
        )));
    }
    gens.extend(segment);
    let polys: Vec<Polynomial> = gens
        .into_iter()
        .map(|mm| Polynomial::from_terms(field, nvars, vec![(mm, field.one())]))
        .collect();
    Ok(PolySystem::new(polys).with_meta("scheme", "lpp-sharp"))
}

/// HFEv− parameters: n the extension degree (and base variable count),
/// d_hfe the univariate degree bound, a the number of dropped equations,
/// v the vinegar variable count. The base field is GF(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HfevParams {
    pub n: u32,
    pub d_hfe: u32,
    pub a: u32,
    pub v: u32,
}

impl HfevParams {
    /// Equation count of the public key.
    pub fn m(&self) -> u32 {
        self.n - self.a
    }

    /// Variable count of the public key.
    pub fn vars(&self) -> u32 {
        self.n + self.v
    }
}

/// An HFEv− key pair at desk scale; the secret side is retained so tests can
/// check that the public key computes the same function.
pub struct HfevKey {
    pub params: HfevParams,
    pub public: PolySystem,
    ext: gf2x::Gf2Ext,
    /// alpha_{ij} on X^(2^i + 2^j), i < j.
    quad: Vec<(u32, u32, u64)>,
    /// beta_i: affine form in the vinegar variables (constant first) on
    /// X^(2^i).
    lin: Vec<(u32, Vec<u64>)>,
    /// gamma: constant, linear, and upper-triangular quadratic vinegar
    /// coefficients.
    gamma0: u64,
    gamma1: Vec<u64>,
    gamma2: Vec<Vec<u64>>,
    s: Matrix,
    t: Matrix,
}

/// Generates an HFEv− public key: a quadratic secret map over GF(2^n) with
/// vinegar variables, expressed over GF(2), minus the last `a` equations,
/// disguised by random invertible linear maps S (inputs) and T (outputs).
/// Public polynomials are reduced modulo the field equations (exponents
/// below 2), the representation an attacker works with.
pub fn gen_hfev_minus<R: Rng + ?Sized>(
    params: HfevParams,
    rng: &mut R,
) -> Result<PolySystem, SchemeError> {
    gen_hfev_keypair(params, rng).map(|k| k.public)
}

pub fn gen_hfev_keypair<R: Rng + ?Sized>(
    params: HfevParams,
    rng: &mut R,
) -> Result<HfevKey, SchemeError> {
    let HfevParams { n, d_hfe, a, v } = params;
    if !(2..=24).contains(&n) {
        return Err(SchemeError(format!("need 2 <= n <= 24, got n = {n}")));
    }
    if a >= n {
        return Err(SchemeError(format!("need a < n, got a = {a}, n = {n}")));
    }
    if d_hfe < 3 {
        return Err(SchemeError(format!(
            "need d_hfe >= 3 so that some exponent 2^i + 2^j fits, got {d_hfe}"
        )));
    }
    let field = Field::new(2, 1).expect("GF(2)");
    let ext = gf2x::Gf2Ext::new(n);
    let nv = (n + v) as usize;

    // Exponent support within the degree bound.
    let mut quad_exps = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (1u64 << i) + (1u64 << j) <= d_hfe as u64 {
                quad_exps.push((i, j));
            }
        }
    }
    let lin_exps: Vec<u32> = (0..n).filter(|&i| (1u64 << i) <= d_hfe as u64).collect();

    let quad: Vec<(u32, u32, u64)> = quad_exps
        .iter()
        .map(|&(i, j)| (i, j, ext.sample(rng)))
        .collect();
    let lin: Vec<(u32, Vec<u64>)> = lin_exps
        .iter()
        .map(|&i| {
            let coeffs: Vec<u64> = (0..=v).map(|_| ext.sample(rng)).collect();
            (i, coeffs)
        })
        .collect();
    let gamma0 = ext.sample(rng);
    let gamma1: Vec<u64> = (0..v).map(|_| ext.sample(rng)).collect();
    let gamma2: Vec<Vec<u64>> = (0..v)
        .map(|l| (l..v).map(|_| ext.sample(rng)).collect())
        .collect();

    let s = linalg::random_invertible(&field, nv, rng);
    let t = linalg::random_invertible(&field, (n - a) as usize, rng);

    let key = HfevKey {
        params,
        public: PolySystem::new(vec![Polynomial::zero(&field, nv)]),
        ext,
        quad,
        lin,
        gamma0,
        gamma1,
        gamma2,
        s,
        t,
    };
    let public = key.expand_public(&field)?;
    Ok(HfevKey { public, ..key })
}

impl HfevKey {
    /// Expresses the secret map over GF(2), applies S, drops `a` equations,
    /// applies T, and reduces modulo the field equations.
    fn expand_public(&self, field: &Field) -> Result<PolySystem, SchemeError> {
        let HfevParams { n, a, v, .. } = self.params;
        let nv = (n + v) as usize;
        let ext = &self.ext;
        // X^(2^i) is GF(2)-linear: coefficient of input bit k is
        // theta^(k * 2^i).
        let frob_row = |i: u32| -> Vec<u64> {
            (0..n)
                .map(|k| ext.pow(0b10, (k as u64) << i))
                .collect()
        };
        // Accumulate the big-field coefficients of the secret map on base
        // monomials (characteristic 2: XOR).
        let mut acc: std::collections::HashMap<Monomial, u64> = std::collections::HashMap::new();
        let mut add = |m: Monomial, c: u64| {
            if c != 0 {
                let e = acc.entry(m.clone()).or_insert(0);
                *e ^= c;
                if *e == 0 {
                    acc.remove(&m);
                }
            }
        };
        for &(i, j, alpha) in &self.quad {
            let (ri, rj) = (frob_row(i), frob_row(j));
            for k in 0..n as usize {
                for l in 0..n as usize {
                    let c = ext.mul(alpha, ext.mul(ri[k], rj[l]));
                    let mut e = vec![0u16; nv];
                    e[k] += 1;
                    e[l] += 1;
                    add(Monomial::new(e), c);
                }
            }
        }
        for (i, coeffs) in &self.lin {
            let ri = frob_row(*i);
            for k in 0..n as usize {
                // Constant part of beta_i.
                let mut e = vec![0u16; nv];
                e[k] = 1;
                add(Monomial::new(e), ext.mul(coeffs[0], ri[k]));
                // Vinegar-linear part.
                for l in 0..v as usize {
                    let mut e = vec![0u16; nv];
                    e[k] += 1;
                    e[n as usize + l] += 1;
                    add(Monomial::new(e), ext.mul(coeffs[1 + l], ri[k]));
                }
            }
        }
        add(Monomial::one(nv), self.gamma0);
        for l in 0..v as usize {
            let mut e = vec![0u16; nv];
            e[n as usize + l] = 1;
            add(Monomial::new(e), self.gamma1[l]);
        }
        for l in 0..v as usize {
            for (off, &c) in self.gamma2[l].iter().enumerate() {
                let l2 = l + off;
                let mut e = vec![0u16; nv];
                e[n as usize + l] += 1;
                e[n as usize + l2] += 1;
                add(Monomial::new(e), c);
            }
        }
        // Split coordinates: public polynomial j collects bit j of each
        // coefficient.
        let mut raw: Vec<Polynomial> = (0..n as usize)
            .map(|j| {
                let mut p = Polynomial::zero(field, nv);
                for (m, &c) in &acc {
                    if (c >> j) & 1 == 1 {
                        p.add_term(m.clone(), field.one());
                    }
                }
                p
            })
            .collect();
        // Input mix: substitute x_i -> (S x)_i.
        let s_forms: Vec<Polynomial> = (0..nv)
            .map(|i| {
                let mut f = Polynomial::zero(field, nv);
                for (j, &c) in self.s[i].iter().enumerate() {
                    f.add_term(Monomial::var(j, nv), c);
                }
                f
            })
            .collect();
        raw = raw.iter().map(|p| p.substitute(&s_forms)).collect();
        // Minus: drop the last a coordinates, then output mix by T.
        raw.truncate((n - a) as usize);
        let mixed: Vec<Polynomial> = self
            .t
            .iter()
            .map(|row| {
                let mut p = Polynomial::zero(field, nv);
                for (j, &c) in row.iter().enumerate() {
                    p = p.add(&raw[j].scale(c));
                }
                p.reduce_mod_field_eqs()
            })
            .collect();
        for p in &mixed {
            if p.degree() != Some(2) {
                return Err(SchemeError(
                    "degenerate HFEv- instance: a public polynomial is not quadratic".into(),
                ));
            }
        }
        Ok(PolySystem::new(mixed)
            .with_meta("scheme", "hfev-")
            .with_meta(
                "params",
                format!(
                    "n={} d_hfe={} a={} v={}",
                    self.params.n, self.params.d_hfe, self.params.a, self.params.v
                ),
            ))
    }

    /// Evaluates the public key through the secret side: pack, evaluate the
    /// big-field map, unpack, drop, mix. Used to validate the expansion.
    pub fn evaluate_via_secret(&self, input: &[FieldElement]) -> Vec<FieldElement> {
        let HfevParams { n, a, v, .. } = self.params;
        let field = self.public.field().clone();
        let mixed_in = linalg::mat_vec(&field, &self.s, input);
        let x_bits: u64 = mixed_in[..n as usize]
            .iter()
            .enumerate()
            .map(|(k, e)| (e.rep() & 1) << k)
            .sum();
        let vin: Vec<u64> = mixed_in[n as usize..]
            .iter()
            .map(|e| e.rep() & 1)
            .collect();
        let ext = &self.ext;
        let mut y = 0u64;
        for &(i, j, alpha) in &self.quad {
            let xp = ext.pow(x_bits, (1u64 << i) + (1u64 << j));
            y ^= ext.mul(alpha, xp);
        }
        for (i, coeffs) in &self.lin {
            let mut beta = coeffs[0];
            for l in 0..v as usize {
                if vin[l] == 1 {
                    beta ^= coeffs[1 + l];
                }
            }
            y ^= ext.mul(beta, ext.pow(x_bits, 1u64 << i));
        }
        y ^= self.gamma0;
        for l in 0..v as usize {
            if vin[l] == 1 {
                y ^= self.gamma1[l];
            }
        }
        for l in 0..v as usize {
            for (off, &c) in self.gamma2[l].iter().enumerate() {
                let l2 = l + off;
                if vin[l] == 1 && vin[l2] == 1 {
                    y ^= c;
                }
            }
        }
        let dropped: Vec<FieldElement> = (0..(n - a) as usize)
            .map(|j| field.element((y >> j) & 1))
            .collect();
        linalg::mat_vec(&field, &self.t, &dropped)
    }
}

/// Rainbow parameters: field size and the two-layer structure (v1, o1, o2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RainbowParams {
    pub q: u64,
    pub v1: u32,
    pub o1: u32,
    pub o2: u32,
}

impl RainbowParams {
    pub fn vars(&self) -> u32 {
        self.v1 + self.o1 + self.o2
    }

    pub fn m(&self) -> u32 {
        self.o1 + self.o2
    }
}

/// A Rainbow key pair; the central map and the maps S, T are retained so
/// that signing (and so generator validation) is possible.
pub struct RainbowKey {
    pub params: RainbowParams,
    pub public: PolySystem,
    pub central: Vec<Polynomial>,
    s: Matrix,
    t: Matrix,
}

/// Generates a two-layer Rainbow public key: layer 1 has vinegar variables
/// {1..v1} and oils {v1+1..v1+o1} (no oil-times-oil monomials and no later
/// variables), layer 2 treats the first v1+o1 variables as vinegar with oils
/// the last o2 variables. The central map is composed with random invertible
/// linear maps S and T.
pub fn gen_rainbow<R: Rng + ?Sized>(
    params: RainbowParams,
    rng: &mut R,
) -> Result<PolySystem, SchemeError> {
    gen_rainbow_keypair(params, rng).map(|k| k.public)
}

pub fn gen_rainbow_keypair<R: Rng + ?Sized>(
    params: RainbowParams,
    rng: &mut R,
) -> Result<RainbowKey, SchemeError> {
    let RainbowParams { q, v1, o1, o2 } = params;
    if v1 < 1 || o1 < 1 || o2 < 1 {
        return Err(SchemeError("need v1, o1, o2 >= 1".into()));
    }
    let field = Field::of_size(q).map_err(|e| SchemeError(e.to_string()))?;
    let n = params.vars() as usize;
    let m = params.m() as usize;
    for _attempt in 0..16 {
        let mut central = Vec::with_capacity(m);
        // Layer 1: quadratic in vars < v1+o1, no oil*oil (oil = v1..v1+o1).
        for _ in 0..o1 {
            let mut p = Polynomial::zero(&field, n);
            for i in 0..v1 as usize {
                for j in i..(v1 + o1) as usize {
                    let mut e = vec![0u16; n];
                    e[i] += 1;
                    e[j] += 1;
                    p.add_term(Monomial::new(e), field.sample_uniform(rng));
                }
            }
            for i in 0..(v1 + o1) as usize {
                p.add_term(Monomial::var(i, n), field.sample_uniform(rng));
            }
            central.push(p);
        }
        // Layer 2: vinegar = vars < v1+o1, oil = the last o2 variables.
        for _ in 0..o2 {
            let mut p = Polynomial::zero(&field, n);
            for i in 0..(v1 + o1) as usize {
                for j in i..n {
                    let mut e = vec![0u16; n];
                    e[i] += 1;
                    e[j] += 1;
                    p.add_term(Monomial::new(e), field.sample_uniform(rng));
                }
            }
            for i in 0..n {
                p.add_term(Monomial::var(i, n), field.sample_uniform(rng));
            }
            central.push(p);
        }
        let s = linalg::random_invertible(&field, n, rng);
        let t = linalg::random_invertible(&field, m, rng);
        let s_forms: Vec<Polynomial> = (0..n)
            .map(|i| {
                let mut f = Polynomial::zero(&field, n);
                for (j, &c) in s[i].iter().enumerate() {
                    f.add_term(Monomial::var(j, n), c);
                }
                f
            })
            .collect();
        let substituted: Vec<Polynomial> = central.iter().map(|p| p.substitute(&s_forms)).collect();
        let public_polys: Vec<Polynomial> = t
            .iter()
            .map(|row| {
                let mut p = Polynomial::zero(&field, n);
                for (j, &c) in row.iter().enumerate() {
                    p = p.add(&substituted[j].scale(c));
                }
                p
            })
            .collect();
        if public_polys.iter().any(|p| p.degree() != Some(2)) {
            continue;
        }
        let public = PolySystem::new(public_polys)
            .with_meta("scheme", "rainbow")
            .with_meta("params", format!("q={q} v1={v1} o1={o1} o2={o2}"));
        return Ok(RainbowKey {
            params,
            public,
            central,
            s,
            t,
        });
    }
    Err(SchemeError("could not generate a quadratic Rainbow key".into()))
}

impl RainbowKey {
    /// Signs a target vector with the secret key: invert T, solve the layers
    /// with random vinegar values, invert S. Returns None if every vinegar
    /// retry leaves a singular layer system.
    pub fn sign<R: Rng + ?Sized>(
        &self,
        target: &[FieldElement],
        rng: &mut R,
    ) -> Option<Vec<FieldElement>> {
        let field = self.public.field().clone();
        let RainbowParams { v1, o1, o2, .. } = self.params;
        let n = self.params.vars() as usize;
        assert_eq!(target.len(), self.params.m() as usize);
        let t_inv = linalg::invert(&field, &self.t).expect("T is invertible");
        let y = linalg::mat_vec(&field, &t_inv, target);
        'retry: for _ in 0..64 {
            let mut assign = vec![field.zero(); n];
            for a in assign.iter_mut().take(v1 as usize) {
                *a = field.sample_uniform(rng);
            }
            // Layer 1: linear in the o1 oils once the vinegars are fixed.
            let oils1: Vec<usize> = (v1 as usize..(v1 + o1) as usize).collect();
            match solve_affine_layer(&field, &self.central[..o1 as usize], &assign, &oils1, &y[..o1 as usize]) {
                Some(vals) => {
                    for (k, &i) in oils1.iter().enumerate() {
                        assign[i] = vals[k];
                    }
                }
                None => continue 'retry,
            }
            // Layer 2: linear in the last o2 oils.
            let oils2: Vec<usize> = ((v1 + o1) as usize..n).collect();
            match solve_affine_layer(&field, &self.central[o1 as usize..], &assign, &oils2, &y[o1 as usize..]) {
                Some(vals) => {
                    for (k, &i) in oils2.iter().enumerate() {
                        assign[i] = vals[k];
                    }
                }
                None => continue 'retry,
            }
            let _ = o2;
            let s_inv = linalg::invert(&field, &self.s).expect("S is invertible");
            return Some(linalg::mat_vec(&field, &s_inv, &assign));
        }
        None
    }
}

/// Solves central-layer polynomials for the oil variables, which appear only
/// linearly once the other variables are fixed.
fn solve_affine_layer(
    field: &Field,
    polys: &[Polynomial],
    assign: &[FieldElement],
    oils: &[usize],
    rhs: &[FieldElement],
) -> Option<Vec<FieldElement>> {
    let k = oils.len();
    assert_eq!(polys.len(), rhs.len());
    assert_eq!(polys.len(), k);
    // Row: coefficients of the oil variables and the constant once the
    // non-oil variables take their assigned values.
    let mut mat: Vec<Vec<FieldElement>> = Vec::with_capacity(k);
    let mut vec_rhs: Vec<FieldElement> = Vec::with_capacity(k);
    for (p, &target) in polys.iter().zip(rhs) {
        let mut coeffs = vec![field.zero(); k];
        let mut constant = field.zero();
        for (m, c) in p.terms() {
            // Split the monomial into oil part and assigned part.
            let mut oil_hits: Vec<usize> = Vec::new();
            let mut val = c;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Some(pos) = oils.iter().position(|&o| o == i) {
                    for _ in 0..e {
                        oil_hits.push(pos);
                    }
                } else {
                    val = field.mul(val, field.pow(assign[i], e as u64));
                }
            }
            match oil_hits.len() {
                0 => constant = field.add(constant, val),
                1 => coeffs[oil_hits[0]] = field.add(coeffs[oil_hits[0]], val),
                _ => panic!("oil-by-oil monomial in a central layer"),
            }
        }
        mat.push(coeffs);
        vec_rhs.push(field.sub(target, constant));
    }
    let inv = linalg::invert(field, &mat)?;
    Some(linalg::mat_vec(field, &inv, &vec_rhs))
}

/// Outcome of squaring a public key.
#[derive(Clone, Debug)]
pub struct SquareOutcome {
    pub system: PolySystem,
    pub target: Vec<FieldElement>,
    pub fixed: Vec<FieldElement>,
    /// Some(true): verified solvable; Some(false): still unsolvable after
    /// the retry cap; None: solvability check infeasible at this size.
    pub solvable: Option<bool>,
    pub attempts: u32,
}

/// Pure squaring step: subtracts the target from each polynomial, sets the
/// last n - m variables to the fixed values, and renumbers to m variables.
pub fn make_square_with(
    sys: &PolySystem,
    target: &[FieldElement],
    fixed: &[FieldElement],
) -> PolySystem {
    let field = sys.field().clone();
    let n = sys.nvars();
    let m = sys.len();
    assert!(n >= m, "need at least as many variables as polynomials");
    assert_eq!(target.len(), m);
    assert_eq!(fixed.len(), n - m);
    let args: Vec<Polynomial> = (0..n)
        .map(|i| {
            if i < m {
                let mut p = Polynomial::zero(&field, m);
                p.add_term(Monomial::var(i, m), field.one());
                p
            } else {
                Polynomial::constant(&field, m, fixed[i - m])
            }
        })
        .collect();
    let polys: Vec<Polynomial> = sys
        .polys()
        .iter()
        .zip(target)
        .map(|(p, &s)| {
            let shifted = p.sub(&Polynomial::constant(&field, n, s));
            shifted.substitute(&args)
        })
        .collect();
    let mut out = PolySystem::new(polys);
    out.set_metadata(sys.metadata().clone());
    out.set_meta("squared", "true");
    out
}

const SQUARE_RETRY_CAP: u32 = 64;

/// Squares a public key against a random target, resampling the target and
/// the fixed values until the squared system is solvable (verified by
/// exhaustive solving when q^m <= 2^24; larger systems are returned
/// unchecked and flagged).
pub fn make_square<R: Rng + ?Sized>(sys: &PolySystem, rng: &mut R) -> SquareOutcome {
    let field = sys.field().clone();
    let (n, m) = (sys.nvars(), sys.len());
    assert!(n >= m, "need at least as many variables as polynomials");
    let feasible = (field.q() as f64).powi(m as i32) <= (1u64 << 24) as f64;
    let mut last = None;
    for attempt in 1..=SQUARE_RETRY_CAP {
        let target: Vec<FieldElement> = (0..m).map(|_| field.sample_uniform(rng)).collect();
        let fixed: Vec<FieldElement> = (0..n - m).map(|_| field.sample_uniform(rng)).collect();
        let squared = make_square_with(sys, &target, &fixed);
        if !feasible {
            return SquareOutcome {
                system: squared,
                target,
                fixed,
                solvable: None,
                attempts: attempt,
            };
        }
        if !solve_system(&squared).is_empty() {
            return SquareOutcome {
                system: squared,
                target,
                fixed,
                solvable: Some(true),
                attempts: attempt,
            };
        }
        last = Some((squared, target, fixed));
    }
    let (system, target, fixed) = last.expect("retry cap is positive");
    SquareOutcome {
        system,
        target,
        fixed,
        solvable: Some(false),
        attempts: SQUARE_RETRY_CAP,
    }
}

/// Appends the field equations x_i^q - x_i for every variable.
pub fn add_field_equations(sys: &PolySystem) -> PolySystem {
    let field = sys.field().clone();
    let n = sys.nvars();
    let q = field.q();
    let mut out = sys.clone();
    for i in 0..n {
        let mut p = Polynomial::zero(&field, n);
        let mut e = vec![0u16; n];
        e[i] = q as u16;
        p.add_term(Monomial::new(e), field.one());
        p.add_term(Monomial::var(i, n), field.neg(field.one()));
        out.push(p);
    }
    out.set_meta("field-equations", "true");
    out
}

/// An invertible affine map x -> M x + b. The disguise default is linear
/// (zero offset); the affine variant exists for generality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Matrix,
    pub offset: Vec<FieldElement>,
}

/// Disguises a system by uniformly random invertible linear maps: returns
/// (T F(S x), S, T).
pub fn disguise<R: Rng + ?Sized>(sys: &PolySystem, rng: &mut R) -> (PolySystem, Matrix, Matrix) {
    let field = sys.field().clone();
    let (n, m) = (sys.nvars(), sys.len());
    let s = linalg::random_invertible(&field, n, rng);
    let t = linalg::random_invertible(&field, m, rng);
    (disguise_with(sys, &s, &t), s, t)
}

/// Disguises with uniformly random invertible affine maps (random constant
/// parts on both sides): returns (T(F(S x + b)) + c as maps, S, T).
pub fn disguise_affine<R: Rng + ?Sized>(
    sys: &PolySystem,
    rng: &mut R,
) -> (PolySystem, AffineMap, AffineMap) {
    let field = sys.field().clone();
    let (n, m) = (sys.nvars(), sys.len());
    let s = AffineMap {
        matrix: linalg::random_invertible(&field, n, rng),
        offset: (0..n).map(|_| field.sample_uniform(rng)).collect(),
    };
    let t = AffineMap {
        matrix: linalg::random_invertible(&field, m, rng),
        offset: (0..m).map(|_| field.sample_uniform(rng)).collect(),
    };
    (disguise_affine_with(sys, &s, &t), s, t)
}

/// Applies given affine maps on inputs and outputs.
pub fn disguise_affine_with(sys: &PolySystem, s: &AffineMap, t: &AffineMap) -> PolySystem {
    let field = sys.field().clone();
    let (n, m) = (sys.nvars(), sys.len());
    assert_eq!(s.matrix.len(), n);
    assert_eq!(t.matrix.len(), m);
    let s_forms: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut f = Polynomial::constant(&field, n, s.offset[i]);
            for (j, &c) in s.matrix[i].iter().enumerate() {
                f.add_term(Monomial::var(j, n), c);
            }
            f
        })
        .collect();
    let substituted: Vec<Polynomial> = sys.polys().iter().map(|p| p.substitute(&s_forms)).collect();
    let polys: Vec<Polynomial> = t
        .matrix
        .iter()
        .zip(&t.offset)
        .map(|(row, &off)| {
            let mut p = Polynomial::constant(&field, n, off);
            for (j, &c) in row.iter().enumerate() {
                p = p.add(&substituted[j].scale(c));
            }
            p
        })
        .collect();
    let mut out = PolySystem::new(polys);
    out.set_metadata(sys.metadata().clone());
    out
}

/// Applies given (not necessarily random) maps S and T.
pub fn disguise_with(sys: &PolySystem, s: &Matrix, t: &Matrix) -> PolySystem {
    let field = sys.field().clone();
    let (n, m) = (sys.nvars(), sys.len());
    assert_eq!(s.len(), n);
    assert_eq!(t.len(), m);
    let s_forms: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut f = Polynomial::zero(&field, n);
            for (j, &c) in s[i].iter().enumerate() {
                f.add_term(Monomial::var(j, n), c);
            }
            f
        })
        .collect();
    let substituted: Vec<Polynomial> = sys.polys().iter().map(|p| p.substitute(&s_forms)).collect();
    let polys: Vec<Polynomial> = t
        .iter()
        .map(|row| {
            let mut p = Polynomial::zero(&field, n);
            for (j, &c) in row.iter().enumerate() {
                p = p.add(&substituted[j].scale(c));
            }
            p
        })
        .collect();
    let mut out = PolySystem::new(polys);
    out.set_metadata(sys.metadata().clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::{degree_of_regularity, is_algebraically_random};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_system_is_reproducible_with_exact_degrees() {
        let f = Field::of_size(4).unwrap();
        let degrees = [2u32, 3, 2];
        let a = gen_random_system(&f, 3, &degrees, &mut ChaCha8Rng::seed_from_u64(5));
        let b = gen_random_system(&f, 3, &degrees, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
        assert_eq!(a.degrees(), degrees.to_vec());
    }

    #[test]
    fn coefficients_are_roughly_uniform() {
        let f = Field::of_size(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts = [0usize; 3];
        let mut total = 0usize;
        for _ in 0..300 {
            let s = gen_random_system(&f, 2, &[2, 2], &mut rng);
            for p in s.polys() {
                for m in monomials_up_to_degree(2, 2, TermOrder::Grevlex) {
                    counts[p.coefficient(&m).rep() as usize] += 1;
                    total += 1;
                }
            }
        }
        let expect = total as f64 / 3.0;
        let sigma = (total as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for &c in &counts {
            assert!((c as f64 - expect).abs() < 5.0 * sigma);
        }
    }

    #[test]
    fn lpp_sharp_small_cases() {
        let f = Field::new(2, 1).unwrap();
        let s = gen_lpp_sharp_system(&f, 2, 3, 2).unwrap();
        let texts: Vec<String> = s.polys().iter().map(|p| p.to_text()).collect();
        assert_eq!(texts, vec!["1*x1^2", "1*x2^2", "1*x1*x2"]);
        let s = gen_lpp_sharp_system(&f, 2, 2, 2).unwrap();
        assert_eq!(s.len(), 2);
        assert!(gen_lpp_sharp_system(&f, 2, 9, 2).is_err());
    }

    #[test]
    fn lpp_sharp_reaches_the_bound() {
        let f = Field::new(2, 1).unwrap();
        for (n, m, d) in [(2usize, 3u64, 2u32), (3, 4, 2), (2, 2, 3)] {
            let s = gen_lpp_sharp_system(&f, n, m, d).unwrap();
            let bound = crate::bounds::dreg_bound_equal_degree(n as u32, m, d).unwrap();
            assert_eq!(degree_of_regularity(&s, 32).finite().unwrap(), bound);
        }
    }

    #[test]
    fn hfev_shapes_match_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        let p = HfevParams { n: 8, d_hfe: 9, a: 1, v: 1 };
        let key = gen_hfev_minus(p, &mut rng).unwrap();
        assert_eq!(key.len(), 7);
        assert_eq!(key.nvars(), 9);
        assert!(key.polys().iter().all(|f| f.degree() == Some(2)));

        let p = HfevParams { n: 12, d_hfe: 4, a: 1, v: 1 };
        let key = gen_hfev_minus(p, &mut rng).unwrap();
        assert_eq!(key.len(), 11);
        assert_eq!(key.nvars(), 13);
        assert!(key.polys().iter().all(|f| f.degree() == Some(2)));
    }

    #[test]
    fn hfev_public_key_matches_secret_map_exhaustively() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = HfevParams { n: 6, d_hfe: 5, a: 1, v: 1 };
        let key = gen_hfev_keypair(p, &mut rng).unwrap();
        let field = key.public.field().clone();
        let nv = key.public.nvars();
        // 2^7 = 128 input points: exhaustive.
        for bits in 0u64..(1 << nv) {
            let input: Vec<FieldElement> =
                (0..nv).map(|i| field.element((bits >> i) & 1)).collect();
            let via_public: Vec<FieldElement> =
                key.public.polys().iter().map(|f| f.evaluate(&input)).collect();
            assert_eq!(via_public, key.evaluate_via_secret(&input));
        }
    }

    #[test]
    fn hfev_rejects_bad_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(gen_hfev_minus(HfevParams { n: 8, d_hfe: 2, a: 1, v: 1 }, &mut rng).is_err());
        assert!(gen_hfev_minus(HfevParams { n: 8, d_hfe: 9, a: 8, v: 1 }, &mut rng).is_err());
        assert!(gen_hfev_minus(HfevParams { n: 30, d_hfe: 9, a: 1, v: 1 }, &mut rng).is_err());
    }

    #[test]
    fn rainbow_shapes_and_central_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = RainbowParams { q: 4, v1: 3, o1: 2, o2: 2 };
        let key = gen_rainbow_keypair(params, &mut rng).unwrap();
        assert_eq!(key.public.len(), 4);
        assert_eq!(key.public.nvars(), 7);
        // Layer-1 central polynomials carry no oil*oil monomial (oils are
        // variables 3..5) and nothing involving the last o2 variables.
        for p in &key.central[..2] {
            for (m, _) in p.terms() {
                let oil_deg: u32 = m.exps()[3..5].iter().map(|&e| e as u32).sum();
                let late_deg: u32 = m.exps()[5..].iter().map(|&e| e as u32).sum();
                assert!(oil_deg <= 1, "oil*oil term in layer 1: {m:?}");
                assert_eq!(late_deg, 0, "layer-2 variable in layer 1: {m:?}");
            }
        }
        let params = RainbowParams { q: 9, v1: 7, o1: 5, o2: 5 };
        let key = gen_rainbow(params, &mut rng).unwrap();
        assert_eq!(key.len(), 10);
        assert_eq!(key.nvars(), 17);
    }

    #[test]
    fn rainbow_signing_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let params = RainbowParams { q: 4, v1: 3, o1: 2, o2: 2 };
        let key = gen_rainbow_keypair(params, &mut rng).unwrap();
        let field = key.public.field().clone();
        for _ in 0..5 {
            let target: Vec<FieldElement> =
                (0..4).map(|_| field.sample_uniform(&mut rng)).collect();
            let sig = key.sign(&target, &mut rng).expect("signing succeeds");
            let evaluated: Vec<FieldElement> =
                key.public.polys().iter().map(|p| p.evaluate(&sig)).collect();
            assert_eq!(evaluated, target);
        }
    }

    #[test]
    fn squaring_commutes_with_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = Field::of_size(3).unwrap();
        let sys = gen_random_system(&f, 4, &[2, 2], &mut rng);
        let target = vec![f.element(1), f.element(2)];
        let fixed = vec![f.element(0), f.element(2)];
        let squared = make_square_with(&sys, &target, &fixed);
        assert_eq!(squared.nvars(), 2);
        for _ in 0..20 {
            let head: Vec<FieldElement> = (0..2).map(|_| f.sample_uniform(&mut rng)).collect();
            let mut full = head.clone();
            full.extend_from_slice(&fixed);
            for (i, p) in sys.polys().iter().enumerate() {
                let lhs = f.sub(p.evaluate(&full), target[i]);
                assert_eq!(lhs, squared.polys()[i].evaluate(&head));
            }
        }
    }

    #[test]
    fn squaring_with_equal_counts_only_subtracts() {
        let f = Field::of_size(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let sys = gen_random_system(&f, 2, &[2, 2], &mut rng);
        let target = vec![f.one(), f.zero()];
        let squared = make_square_with(&sys, &target, &[]);
        assert_eq!(
            squared.polys()[0],
            sys.polys()[0].sub(&Polynomial::constant(&f, 2, f.one()))
        );
        assert_eq!(squared.polys()[1], sys.polys()[1]);
    }

    #[test]
    fn squared_gemss_system_is_square_and_solvable() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let key = gen_hfev_minus(HfevParams { n: 8, d_hfe: 9, a: 1, v: 1 }, &mut rng).unwrap();
        let out = make_square(&key, &mut rng);
        assert_eq!(out.system.len(), 7);
        assert_eq!(out.system.nvars(), 7);
        assert_eq!(out.solvable, Some(true));
    }

    #[test]
    fn field_equations_preserve_solutions() {
        let f = Field::of_size(2).unwrap();
        let sys = PolySystem::new(vec![
            Polynomial::parse(&f, 2, "1*x1*x2 + 1*x1 + 1").unwrap(),
        ]);
        let augmented = add_field_equations(&sys);
        assert_eq!(augmented.len(), 3);
        assert_eq!(
            augmented.polys()[1],
            Polynomial::parse(&f, 2, "1*x1^2 + 1*x1").unwrap()
        );
        assert_eq!(solve_system(&sys), solve_system(&augmented));
    }

    #[test]
    fn field_equations_make_high_degree_systems_random() {
        // All generator degrees >= q: the augmented system lands in the
        // deterministic equal-degree branch when degrees all equal q.
        let f = Field::of_size(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let sys = gen_random_system(&f, 3, &[2, 2, 2], &mut rng);
        let augmented = add_field_equations(&sys);
        let v = is_algebraically_random(&augmented, 20, &mut rng).unwrap();
        assert_eq!(v.verdict, crate::regularity::Verdict::Random);
    }

    #[test]
    fn identity_disguise_is_identity() {
        let f = Field::of_size(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let sys = gen_random_system(&f, 3, &[2, 2, 2], &mut rng);
        let id3: Matrix = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { f.one() } else { f.zero() })
                    .collect()
            })
            .collect();
        let out = disguise_with(&sys, &id3, &id3);
        assert_eq!(out.polys(), sys.polys());
    }

    #[test]
    fn affine_disguise_evaluates_consistently() {
        let f = Field::of_size(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let sys = gen_random_system(&f, 2, &[2, 2], &mut rng);
        let (disguised, s, t) = disguise_affine(&sys, &mut rng);
        // Affine offsets only touch lower-order terms, so the degree of
        // regularity (a top-part invariant) is unchanged.
        assert_eq!(
            degree_of_regularity(&sys, 6),
            degree_of_regularity(&disguised, 6)
        );
        // P(y) = T(F(S y + b)) + c, checked pointwise.
        for _ in 0..10 {
            let y: Vec<FieldElement> = (0..2).map(|_| f.sample_uniform(&mut rng)).collect();
            let mut inner = linalg::mat_vec(&f, &s.matrix, &y);
            for (v, &b) in inner.iter_mut().zip(&s.offset) {
                *v = f.add(*v, b);
            }
            let central: Vec<FieldElement> =
                sys.polys().iter().map(|p| p.evaluate(&inner)).collect();
            let mut expect = linalg::mat_vec(&f, &t.matrix, &central);
            for (v, &c) in expect.iter_mut().zip(&t.offset) {
                *v = f.add(*v, c);
            }
            let got: Vec<FieldElement> =
                disguised.polys().iter().map(|p| p.evaluate(&y)).collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn disguise_preserves_dreg_and_solutions() {
        let f = Field::of_size(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..5 {
            let sys = gen_random_system(&f, 3, &[2, 2, 2], &mut rng);
            let (disguised, s, _t) = disguise(&sys, &mut rng);
            assert_eq!(
                degree_of_regularity(&sys, 8),
                degree_of_regularity(&disguised, 8)
            );
            // Solutions biject through S: y solves the disguise iff S y
            // solves the original.
            let sols_orig = solve_system(&sys);
            let mut mapped: Vec<Vec<FieldElement>> = solve_system(&disguised)
                .into_iter()
                .map(|y| linalg::mat_vec(&f, &s, &y))
                .collect();
            mapped.sort_by_key(|p| p.iter().map(|e| e.rep()).collect::<Vec<_>>());
            assert_eq!(sols_orig, mapped);
        }
    }
}
