//! Sparse multivariate polynomial arithmetic over GF(q).
//!
//! Monomials are exponent vectors with 16-bit entries; polynomials map
//! monomials to nonzero coefficients. Two term orders are supported, degree
//! reverse lexicographic (grevlex) and lexicographic (lex), both with
//! x1 > x2 > ... > xn.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, FieldElement};

/// A monomial in n variables, stored as its exponent vector.
///
/// The derived `Ord` compares exponent vectors lexicographically, which is
/// exactly the lex term order with x1 > x2 > ... > xn (for monomials with the
/// same variable count). Use [`TermOrder::cmp_monomials`] for order-dependent
/// comparisons.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Monomial {
        Monomial(exps)
    }

    /// The monomial 1 in n variables.
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    /// The variable x_{i+1} (0-based index) in n variables.
    pub fn var(index: usize, nvars: usize) -> Monomial {
        assert!(index < nvars);
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// other / self, when self divides other.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(&b, &a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// True when no variable appears in both monomials.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// The (D, k, a) type of a nonconstant monomial: D its degree, x_k the
    /// largest variable appearing in it (1-based), a the exponent of x_k.
    /// The constant monomial 1 has no type.
    pub fn dka_type(&self) -> Option<(u32, usize, u16)> {
        let k = self.0.iter().position(|&e| e > 0)?;
        Some((self.degree(), k + 1, self.0[k]))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// A term order on monomials, fixing x1 > x2 > ... > xn.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TermOrder {
    /// Degree reverse lexicographic: higher total degree wins; on equal
    /// degree the monomial whose rightmost differing exponent is smaller
    /// wins.
    #[default]
    Grevlex,
    /// Lexicographic: the leftmost differing exponent decides.
    Lex,
}

impl TermOrder {
    pub fn cmp_monomials(self, u: &Monomial, v: &Monomial) -> Ordering {
        assert_eq!(u.nvars(), v.nvars(), "variable count mismatch");
        match self {
            TermOrder::Lex => u.exps().cmp(v.exps()),
            TermOrder::Grevlex => {
                let (du, dv) = (u.degree(), v.degree());
                if du != dv {
                    return du.cmp(&dv);
                }
                for i in (0..u.nvars()).rev() {
                    let (a, b) = (u.exps()[i], v.exps()[i]);
                    if a != b {
                        // Larger exponent in a later variable means smaller.
                        return b.cmp(&a);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TermOrder::Grevlex => "grevlex",
            TermOrder::Lex => "lex",
        }
    }
}

impl std::str::FromStr for TermOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grevlex" => Ok(TermOrder::Grevlex),
            "lex" => Ok(TermOrder::Lex),
            other => Err(format!("unknown term order '{other}'")),
        }
    }
}

/// All monomials in n variables of degree exactly d, strictly decreasing in
/// the given order. There are C(n+d-1, d) of them.
pub fn monomials_of_degree(nvars: usize, d: u32, order: TermOrder) -> Vec<Monomial> {
    assert!(nvars >= 1);
    let mut out = Vec::with_capacity(count_monomials_of_degree(nvars, d) as usize);
    let mut exps = vec![0u16; nvars];
    fill_monomials(&mut exps, 0, d, &mut out);
    out.sort_unstable_by(|a, b| order.cmp_monomials(b, a));
    out
}

/// All monomials in n variables of degree at most d, strictly decreasing in
/// the given order. There are C(n+d, d) of them.
pub fn monomials_up_to_degree(nvars: usize, d: u32, order: TermOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut exps = vec![0u16; nvars];
        fill_monomials(&mut exps, 0, deg, &mut out);
    }
    out.sort_unstable_by(|a, b| order.cmp_monomials(b, a));
    out
}

fn fill_monomials(exps: &mut Vec<u16>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining as u16;
        out.push(Monomial(exps.clone()));
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e as u16;
        fill_monomials(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

/// dim R_d = C(n+d-1, d), as u64. Panics on overflow (desk scales only).
pub fn count_monomials_of_degree(nvars: usize, d: u32) -> u64 {
    binomial_u64(nvars as u64 + d as u64 - 1, d as u64)
}

/// Number of monomials of degree <= d, C(n+d, d).
pub fn count_monomials_up_to_degree(nvars: usize, d: u32) -> u64 {
    binomial_u64(nvars as u64 + d as u64, d as u64)
}

pub(crate) fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        assert!(acc <= u64::MAX as u128, "binomial overflow: C({n},{k})");
    }
    acc as u64
}

/// A sparse polynomial over GF(q) in n variables.
///
/// Invariant: no explicit zero coefficients; the zero polynomial has an empty
/// term map.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Polynomial {
        Polynomial {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: FieldElement) -> Polynomial {
        let mut p = Polynomial::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn from_terms<I>(field: &Field, nvars: usize, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).copied().unwrap_or_else(|| self.field.zero())
    }

    /// Adds c * m into the polynomial, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        assert_eq!(m.nvars(), self.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: TermOrder) -> Option<(&Monomial, FieldElement)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp_monomials(a, b))
            .map(|(m, &c)| (m, c))
    }

    /// Terms sorted strictly decreasing under the given order.
    pub fn sorted_terms(&self, order: TermOrder) -> Vec<(&Monomial, FieldElement)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        v.sort_by(|(a, _), (b, _)| order.cmp_monomials(b, a));
        v
    }

    /// The homogeneous part of largest degree.
    ///
    /// Panics on the zero polynomial, which has no top part.
    pub fn top_part(&self) -> Polynomial {
        let d = self.degree().expect("top part of the zero polynomial");
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    fn assert_compatible(&self, other: &Polynomial) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.field, self.nvars);
        }
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), self.field.mul(a, c)))
                .collect(),
        }
    }

    /// Multiplies by the term c * m.
    pub fn mul_term(&self, m: &Monomial, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.field, self.nvars);
        }
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, &a)| (mm.mul(m), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (m, c) in other.terms() {
            for (mm, a) in self.terms() {
                out.add_term(mm.mul(m), self.field.mul(a, c));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at a point of GF(q)^n.
    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars, "point length mismatch");
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in self.terms() {
            let mut t = c;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Rewrites x^q -> x in every variable until all exponents are < q.
    ///
    /// The result agrees with the original as a function on GF(q)^n and has
    /// degree at most n(q-1).
    pub fn reduce_mod_field_eqs(&self) -> Polynomial {
        let q = self.field.q() as u32;
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (m, c) in self.terms() {
            let exps: Vec<u16> = m
                .exps()
                .iter()
                .map(|&e| {
                    if (e as u32) < q {
                        e
                    } else {
                        ((e as u32 - 1) % (q - 1) + 1) as u16
                    }
                })
                .collect();
            out.add_term(Monomial::new(exps), c);
        }
        out
    }

    /// Substitutes args[i] for variable x_{i+1}. All substituted polynomials
    /// must share a field and variable count (which may differ from this
    /// polynomial's).
    pub fn substitute(&self, args: &[Polynomial]) -> Polynomial {
        assert_eq!(args.len(), self.nvars, "substitution arity mismatch");
        let target_nvars = args.first().map_or(self.nvars, |p| p.nvars());
        for a in args {
            assert_eq!(a.field(), &self.field, "field mismatch");
            assert_eq!(a.nvars(), target_nvars, "substitution variable count mismatch");
        }
        let mut out = Polynomial::zero(&self.field, target_nvars);
        for (m, c) in self.terms() {
            let mut t = Polynomial::constant(&self.field, target_nvars, c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&args[i].pow(e as u32));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Text form: terms joined by " + ", each "c*x1^e1*..." with
    /// zero-exponent factors omitted and the constant term as a bare integer.
    /// Terms appear in decreasing grevlex order. The zero polynomial prints
    /// as "0".
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .sorted_terms(TermOrder::Grevlex)
            .into_iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{}", c.rep())
                } else {
                    let mut s = format!("{}", c.rep());
                    for (i, &e) in m.exps().iter().enumerate() {
                        if e == 1 {
                            s.push_str(&format!("*x{}", i + 1));
                        } else if e > 1 {
                            s.push_str(&format!("*x{}^{}", i + 1, e));
                        }
                    }
                    s
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses the textual form produced by [`Polynomial::to_text`]. Accepts
    /// arbitrary whitespace, omitted "^1" exponents, and an omitted leading
    /// coefficient ("x1*x2" reads as 1*x1*x2).
    pub fn parse(field: &Field, nvars: usize, text: &str) -> Result<Polynomial, ParseError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError("empty polynomial".into()));
        }
        let mut out = Polynomial::zero(field, nvars);
        if compact == "0" {
            return Ok(out);
        }
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(ParseError("empty term".into()));
            }
            let mut coeff = field.one();
            let mut exps = vec![0u32; nvars];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(ParseError(format!("empty factor in term '{term}'")));
                }
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx_str, exp_str) = match rest.split_once('^') {
                        Some((i, e)) => (i, Some(e)),
                        None => (rest, None),
                    };
                    let idx: usize = idx_str
                        .parse()
                        .map_err(|_| ParseError(format!("bad variable '{factor}'")))?;
                    if idx < 1 || idx > nvars {
                        return Err(ParseError(format!(
                            "variable x{idx} out of range 1..={nvars}"
                        )));
                    }
                    let exp: u32 = match exp_str {
                        Some(e) => e
                            .parse()
                            .map_err(|_| ParseError(format!("bad exponent in '{factor}'")))?,
                        None => 1,
                    };
                    exps[idx - 1] += exp;
                } else {
                    let c: u64 = factor
                        .parse()
                        .map_err(|_| ParseError(format!("bad coefficient '{factor}'")))?;
                    if c >= field.q() {
                        return Err(ParseError(format!(
                            "coefficient {c} out of range for GF({})",
                            field.q()
                        )));
                    }
                    coeff = field.mul(coeff, field.element(c));
                }
            }
            let exps16: Vec<u16> = exps
                .iter()
                .map(|&e| u16::try_from(e).map_err(|_| ParseError("exponent overflow".into())))
                .collect::<Result<_, _>>()?;
            out.add_term(Monomial::new(exps16), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Error parsing a polynomial or system file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

/// An ordered system of polynomials over a common ring, with optional
/// provenance metadata (scheme, params, seed).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySystem {
    polys: Vec<Polynomial>,
    metadata: BTreeMap<String, String>,
}

impl PolySystem {
    pub fn new(polys: Vec<Polynomial>) -> PolySystem {
        assert!(!polys.is_empty(), "empty polynomial system");
        let f = polys[0].field().clone();
        let n = polys[0].nvars();
        for p in &polys {
            assert_eq!(p.field(), &f, "field mismatch in system");
            assert_eq!(p.nvars(), n, "variable count mismatch in system");
        }
        PolySystem {
            polys,
            metadata: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &Field {
        self.polys[0].field()
    }

    pub fn nvars(&self) -> usize {
        self.polys[0].nvars()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn push(&mut self, p: Polynomial) {
        assert_eq!(p.field(), self.field(), "field mismatch in system");
        assert_eq!(p.nvars(), self.nvars(), "variable count mismatch in system");
        self.polys.push(p);
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn set_meta(&mut self, key: &str, value: impl fmt::Display) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn with_meta(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.set_meta(key, value);
        self
    }

    pub fn set_metadata(&mut self, m: BTreeMap<String, String>) {
        self.metadata = m;
    }

    /// Degrees of the member polynomials (zero polynomials report degree 0).
    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(|p| p.degree().unwrap_or(0)).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// The common degree when all nonzero members share one.
    pub fn equal_degree(&self) -> Option<u32> {
        let mut degs = self.polys.iter().filter(|p| !p.is_zero()).map(|p| p.degree().unwrap());
        let d0 = degs.next()?;
        if degs.all(|d| d == d0) {
            Some(d0)
        } else {
            None
        }
    }

    /// Top homogeneous parts of the nonzero members.
    pub fn tops(&self) -> Vec<Polynomial> {
        self.polys
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.top_part())
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.polys.iter().all(|p| p.is_homogeneous())
    }
}
