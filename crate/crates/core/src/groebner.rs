//! Gröbner-basis verification and solving-degree computations.
//!
//! The solving degree of a system is the least d such that row-reducing the
//! Macaulay matrix M_{<=d} yields a Gröbner basis of the ideal. The standard
//! variant reduces once per degree; the mutant variant re-multiplies newly
//! found lower-degree polynomials back up and re-reduces until a fixpoint
//! before moving to the next degree.
//!
//! Whether the reduced rows form a Gröbner basis is decided with Buchberger's
//! criterion (with the coprime-leading-term skip) after minimalizing the row
//! set; ideal identity with the input system holds because every row is a
//! combination of multiples of the input and the input embeds among the rows.

use std::collections::HashSet;
use std::fmt;

use crate::field::FieldElement;
use crate::macaulay::MacaulayMatrix;
use crate::poly::{monomials_up_to_degree, Monomial, PolySystem, Polynomial, TermOrder};

/// A Gröbner basis together with the order it is reduced against.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub polys: Vec<Polynomial>,
    pub order: TermOrder,
    /// Leading coefficients are 1, leading monomials pairwise non-divisible,
    /// and no term of any member is divisible by another member's leading
    /// monomial.
    pub reduced: bool,
}

/// Remainder of f on division by the polynomials of `basis`: no term of the
/// result is divisible by any leading monomial of `basis`, and f minus the
/// result lies in the ideal generated by `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: TermOrder) -> Polynomial {
    assert!(!basis.is_empty(), "division by an empty basis");
    let field = f.field().clone();
    let leads: Vec<(&Monomial, FieldElement)> = basis
        .iter()
        .map(|g| g.leading_term(order).expect("zero polynomial in basis"))
        .collect();
    let mut remainder = Polynomial::zero(&field, f.nvars());
    let mut work = f.clone();
    while let Some((lm, lc)) = work.leading_term(order) {
        let lm = lm.clone();
        match leads
            .iter()
            .position(|(glm, _)| glm.divides(&lm))
        {
            Some(i) => {
                let (glm, glc) = (leads[i].0, leads[i].1);
                let mult = glm.quotient(&lm).unwrap();
                let coeff = field.div(lc, glc);
                work = work.sub(&basis[i].mul_term(&mult, coeff));
            }
            None => {
                remainder.add_term(lm.clone(), lc);
                let mut single = Polynomial::zero(&field, f.nvars());
                single.add_term(lm, lc);
                work = work.sub(&single);
            }
        }
    }
    remainder
}

/// The S-polynomial of f and g: both scaled monic, multiplied up to the lcm
/// of their leading monomials, and subtracted.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: TermOrder) -> Polynomial {
    let field = f.field().clone();
    let (fl, fc) = f.leading_term(order).expect("zero polynomial");
    let (gl, gc) = g.leading_term(order).expect("zero polynomial");
    let l = fl.lcm(gl);
    let mf = fl.quotient(&l).unwrap();
    let mg = gl.quotient(&l).unwrap();
    f.mul_term(&mf, field.inv(fc))
        .sub(&g.mul_term(&mg, field.inv(gc)))
}

/// Buchberger's criterion: true iff every S-polynomial of a pair in `basis`
/// reduces to zero modulo `basis`. Pairs with coprime leading monomials are
/// skipped (their S-polynomials always reduce to zero).
///
/// Panics if `basis` contains the zero polynomial.
pub fn is_groebner_basis(basis: &[Polynomial], order: TermOrder) -> bool {
    assert!(!basis.is_empty(), "empty basis");
    let leads: Vec<&Monomial> = basis
        .iter()
        .map(|g| {
            g.leading_term(order)
                .expect("zero polynomial in Groebner test")
                .0
        })
        .collect();
    // Check cheap pairs first: failures usually sit at low lcm degree.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !leads[i].coprime(leads[j]) {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort_by_key(|&(i, j)| leads[i].lcm(leads[j]).degree());
    for (i, j) in pairs {
        let s = s_polynomial(&basis[i], &basis[j], order);
        if !normal_form(&s, basis, order).is_zero() {
            return false;
        }
    }
    true
}

/// Drops every polynomial whose leading monomial is divisible by another
/// kept polynomial's leading monomial.
pub fn minimalize(polys: Vec<Polynomial>, order: TermOrder) -> Vec<Polynomial> {
    let mut sorted = polys;
    sorted.retain(|p| !p.is_zero());
    sorted.sort_by(|a, b| {
        order.cmp_monomials(a.leading_term(order).unwrap().0, b.leading_term(order).unwrap().0)
    });
    let mut kept: Vec<Polynomial> = Vec::new();
    for p in sorted {
        let lm = p.leading_term(order).unwrap().0.clone();
        if !kept
            .iter()
            .any(|k| k.leading_term(order).unwrap().0.divides(&lm))
        {
            kept.push(p);
        }
    }
    kept
}

/// Tail-reduces a minimal basis so that no term of any member is divisible by
/// another member's leading monomial, and scales leading coefficients to 1.
fn inter_reduce(mut polys: Vec<Polynomial>, order: TermOrder) -> Vec<Polynomial> {
    let field = polys[0].field().clone();
    for p in polys.iter_mut() {
        let lc = p.leading_term(order).unwrap().1;
        *p = p.scale(field.inv(lc));
    }
    loop {
        let mut changed = false;
        for i in 0..polys.len() {
            let others: Vec<Polynomial> = polys
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if others.is_empty() {
                break;
            }
            let r = normal_form(&polys[i], &others, order);
            if r != polys[i] {
                polys[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    polys.retain(|p| !p.is_zero());
    polys
}

/// Plain Buchberger algorithm, producing the reduced Gröbner basis.
///
/// This is the reference path, used to validate row-reduction results and to
/// solve via lex elimination; it is only intended for small inputs.
pub fn buchberger(gens: &[Polynomial], order: TermOrder) -> GroebnerBasis {
    let gens: Vec<Polynomial> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    assert!(!gens.is_empty(), "Groebner basis of the zero ideal");
    let mut basis = gens;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (li, _) = basis[i].leading_term(order).unwrap();
        let (lj, _) = basis[j].leading_term(order).unwrap();
        if li.coprime(lj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r);
            for i2 in 0..k {
                pairs.push((i2, k));
            }
        }
    }
    let polys = inter_reduce(minimalize(basis, order), order);
    GroebnerBasis {
        polys,
        order,
        reduced: true,
    }
}

/// Solving-degree variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Standard,
    Mutant,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Standard => write!(f, "standard"),
            Variant::Mutant => write!(f, "mutant"),
        }
    }
}

/// One line of the per-degree log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeLogEntry {
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub mutants: usize,
    pub is_groebner: bool,
}

impl fmt::Display for DegreeLogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} rows={} cols={} rank={} mutants={} gb={}",
            self.degree,
            self.rows,
            self.cols,
            self.rank,
            self.mutants,
            if self.is_groebner { "yes" } else { "no" }
        )
    }
}

/// Result of a solving-degree computation.
#[derive(Clone, Debug)]
pub struct SolvingDegreeResult {
    pub degree: u32,
    pub variant: Variant,
    pub basis: GroebnerBasis,
    pub log: Vec<DegreeLogEntry>,
}

/// The degree loop reached its cap without producing a Gröbner basis.
#[derive(Clone, Debug)]
pub struct CapExceeded {
    pub cap: u32,
    pub variant: Variant,
    pub log: Vec<DegreeLogEntry>,
}

impl fmt::Display for CapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} solving degree exceeds cap {} ({} degrees tried)",
            self.variant,
            self.cap,
            self.log.len()
        )
    }
}

impl std::error::Error for CapExceeded {}

/// Default degree cap for solving-degree loops: twice the regular-sequence
/// regularity 1 + sum of (d_i - 1) over the n smallest degrees.
pub fn default_solvdeg_cap(sys: &PolySystem) -> u32 {
    let mut degs = sys.degrees();
    degs.sort_unstable();
    let take = sys.nvars().min(degs.len());
    2 * (1 + degs[..take]
        .iter()
        .map(|&d| d.saturating_sub(1))
        .sum::<u32>())
}

/// Tests whether reduced Macaulay rows constitute a Gröbner basis of the
/// input ideal; returns the minimalized, inter-reduced basis when they do.
///
/// The rows generate the same ideal as the input system (rows are
/// combinations of multiples of it, and it embeds among the rows), so the
/// test is: the minimalized rows pass Buchberger's criterion and every input
/// polynomial has normal form zero against them.
fn rows_are_groebner(
    rows: &[Polynomial],
    sys: &PolySystem,
    order: TermOrder,
) -> Option<Vec<Polynomial>> {
    if rows.is_empty() {
        return None;
    }
    let minimal = minimalize(rows.to_vec(), order);
    for f in sys.polys() {
        if f.is_zero() {
            continue;
        }
        if !normal_form(f, &minimal, order).is_zero() {
            return None;
        }
    }
    if is_groebner_basis(&minimal, order) {
        Some(minimal)
    } else {
        None
    }
}

/// Standard solving degree: the least d <= cap such that one round of row
/// reduction on M_{<=d} produces a Gröbner basis. The loop starts at the
/// maximal input degree, below which the matrix carries no new rows.
pub fn solving_degree_standard(
    sys: &PolySystem,
    order: TermOrder,
    cap: u32,
) -> Result<SolvingDegreeResult, CapExceeded> {
    let start = sys.max_degree();
    let mut log = Vec::new();
    for d in start..=cap {
        let mut m = MacaulayMatrix::build(sys, d, order);
        let (rows, cols) = (m.nrows(), m.ncols());
        let rank = m.rref();
        let polys = m.row_polynomials();
        let basis = rows_are_groebner(&polys, sys, order);
        log.push(DegreeLogEntry {
            degree: d,
            rows,
            cols,
            rank,
            mutants: 0,
            is_groebner: basis.is_some(),
        });
        if let Some(polys) = basis {
            let polys = inter_reduce(polys, order);
            return Ok(SolvingDegreeResult {
                degree: d,
                variant: Variant::Standard,
                basis: GroebnerBasis {
                    polys,
                    order,
                    reduced: true,
                },
                log,
            });
        }
    }
    Err(CapExceeded {
        cap,
        variant: Variant::Standard,
        log,
    })
}

fn poly_key(p: &Polynomial) -> Vec<(Monomial, u64)> {
    p.terms().map(|(m, c)| (m.clone(), c.rep())).collect()
}

/// Mutant solving degree: like the standard variant, but within each degree
/// d the reduction is repeated, each round appending every multiple of
/// degree <= d of newly found polynomials of degree < d, until no new such
/// polynomial appears.
pub fn solving_degree_mutant(
    sys: &PolySystem,
    order: TermOrder,
    cap: u32,
) -> Result<SolvingDegreeResult, CapExceeded> {
    let start = sys.max_degree();
    let field = sys.field().clone();
    let nvars = sys.nvars();
    let mut log = Vec::new();
    for d in start..=cap {
        let mut matrix = MacaulayMatrix::build(sys, d, order);
        let (rows0, cols) = (matrix.nrows(), matrix.ncols());
        let mut expanded: HashSet<Vec<(Monomial, u64)>> = HashSet::new();
        let mut mutants_total = 0usize;
        let (rank, polys) = loop {
            let rank = matrix.rref();
            let polys = matrix.row_polynomials();
            let fresh: Vec<&Polynomial> = polys
                .iter()
                .filter(|p| p.degree().unwrap_or(0) < d && !expanded.contains(&poly_key(p)))
                .collect();
            if fresh.is_empty() {
                break (rank, polys);
            }
            mutants_total += fresh.len();
            let mut next_rows = polys.clone();
            for g in fresh {
                expanded.insert(poly_key(g));
                let dg = g.degree().unwrap_or(0);
                for mult in monomials_up_to_degree(nvars, d - dg, order) {
                    if !mult.is_one() {
                        next_rows.push(g.mul_term(&mult, field.one()));
                    }
                }
            }
            matrix = MacaulayMatrix::from_rows(&field, nvars, d, order, &next_rows);
        };
        let basis = rows_are_groebner(&polys, sys, order);
        log.push(DegreeLogEntry {
            degree: d,
            rows: rows0,
            cols,
            rank,
            mutants: mutants_total,
            is_groebner: basis.is_some(),
        });
        if let Some(polys) = basis {
            let polys = inter_reduce(polys, order);
            return Ok(SolvingDegreeResult {
                degree: d,
                variant: Variant::Mutant,
                basis: GroebnerBasis {
                    polys,
                    order,
                    reduced: true,
                },
                log,
            });
        }
    }
    Err(CapExceeded {
        cap,
        variant: Variant::Mutant,
        log,
    })
}

/// All common zeros of the system in GF(q)^n.
///
/// Exhaustive enumeration when q^n <= 2^24; otherwise a lexicographic
/// Gröbner basis of the system with field equations appended is computed by
/// Buchberger's algorithm and solutions are read off by back-substitution.
/// Points are returned in lexicographic point order.
pub fn solve_system(sys: &PolySystem) -> Vec<Vec<FieldElement>> {
    let q = sys.field().q();
    let n = sys.nvars() as u32;
    let feasible_exhaustive = (q as f64).powi(n as i32) <= (1u64 << 24) as f64;
    if feasible_exhaustive {
        solve_exhaustive(sys)
    } else {
        solve_by_elimination(sys)
    }
}

fn solve_exhaustive(sys: &PolySystem) -> Vec<Vec<FieldElement>> {
    let field = sys.field().clone();
    let n = sys.nvars();
    let mut out = Vec::new();
    let mut point = vec![field.zero(); n];
    loop {
        if sys.polys().iter().all(|p| p.evaluate(&point).is_zero()) {
            out.push(point.clone());
        }
        // Odometer increment, last variable fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            let next = point[i].rep() + 1;
            if next < field.q() {
                point[i] = field.element(next);
                break;
            }
            point[i] = field.zero();
        }
    }
}

fn solve_by_elimination(sys: &PolySystem) -> Vec<Vec<FieldElement>> {
    let field = sys.field().clone();
    let n = sys.nvars();
    let mut gens: Vec<Polynomial> = sys.polys().iter().filter(|p| !p.is_zero()).cloned().collect();
    for i in 0..n {
        // x_i^q - x_i
        let mut p = Polynomial::zero(&field, n);
        let mut e = vec![0u16; n];
        e[i] = field.q() as u16;
        p.add_term(Monomial::new(e), field.one());
        p.add_term(Monomial::var(i, n), field.neg(field.one()));
        gens.push(p);
    }
    let gb = buchberger(&gens, TermOrder::Lex);
    let mut out = Vec::new();
    let mut tail: Vec<FieldElement> = Vec::new();
    descend(&gb.polys, n, &field, n, &mut tail, &mut out);
    out.sort_by_key(|pt| pt.iter().map(|e| e.rep()).collect::<Vec<_>>());
    // The appended field equations vanish identically on GF(q)^n, so every
    // reported point already satisfies the original system; verify anyway.
    out.retain(|pt| sys.polys().iter().all(|p| p.evaluate(pt).is_zero()));
    out
}

/// Back-substitution over a lex basis: assigns variables from x_n upward.
/// `tail` holds the values of x_{level+1}..x_n in reverse order.
fn descend(
    gb: &[Polynomial],
    n: usize,
    field: &crate::field::Field,
    level: usize,
    tail: &mut Vec<FieldElement>,
    out: &mut Vec<Vec<FieldElement>>,
) {
    if level == 0 {
        let mut pt: Vec<FieldElement> = tail.clone();
        pt.reverse();
        out.push(pt);
        return;
    }
    let var = level - 1;
    // Substitute known values into every basis element supported on
    // x_level..x_n; collect the univariate constraints on x_level.
    let mut constraints: Vec<Vec<FieldElement>> = Vec::new(); // coeff lists in x_level
    let mut inconsistent = false;
    for g in gb {
        let supported = g
            .terms()
            .all(|(m, _)| m.exps()[..var].iter().all(|&e| e == 0));
        if !supported {
            continue;
        }
        // Coefficients of powers of x_level after substituting the tail.
        let mut uni: Vec<FieldElement> = Vec::new();
        for (m, c) in g.terms() {
            let mut val = c;
            for (j, &e) in m.exps()[var + 1..].iter().enumerate() {
                if e > 0 {
                    let assigned = tail[n - (var + 1 + j) - 1];
                    val = field.mul(val, field.pow(assigned, e as u64));
                }
            }
            let deg = m.exps()[var] as usize;
            if uni.len() <= deg {
                uni.resize(deg + 1, field.zero());
            }
            uni[deg] = field.add(uni[deg], val);
        }
        while uni.last().map_or(false, |c| c.is_zero()) {
            uni.pop();
        }
        if uni.len() == 1 {
            inconsistent = true; // nonzero constant
            break;
        }
        if !uni.is_empty() {
            constraints.push(uni);
        }
    }
    if inconsistent {
        return;
    }
    for cand in field.elements() {
        let ok = constraints.iter().all(|uni| {
            let mut acc = field.zero();
            for (e, &c) in uni.iter().enumerate() {
                acc = field.add(acc, field.mul(c, field.pow(cand, e as u64)));
            }
            acc.is_zero()
        });
        if ok {
            tail.push(cand);
            descend(gb, n, field, level - 1, tail, out);
            tail.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::monomials_up_to_degree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }
    fn f3() -> Field {
        Field::new(3, 1).unwrap()
    }

    fn p(field: &Field, nvars: usize, s: &str) -> Polynomial {
        Polynomial::parse(field, nvars, s).unwrap()
    }

    fn sys(field: &Field, nvars: usize, texts: &[&str]) -> PolySystem {
        PolySystem::new(texts.iter().map(|t| p(field, nvars, t)).collect())
    }

    #[test]
    fn normal_form_examples() {
        let f = f3();
        let x = p(&f, 2, "1*x1");
        assert!(normal_form(&p(&f, 2, "1*x1^2"), &[x.clone()], TermOrder::Lex).is_zero());
        assert_eq!(
            normal_form(&p(&f, 2, "1*x1*x2 + 1"), &[x], TermOrder::Lex),
            p(&f, 2, "1")
        );
    }

    #[test]
    fn normal_form_chain_reduction() {
        // x1^2 x2 mod {x1^2 + x2, x2^2 + x1} over GF(2), grevlex:
        // x1^2 x2 -> x2^2 -> x1.
        let f = f2();
        let basis = vec![p(&f, 2, "1*x1^2 + 1*x2"), p(&f, 2, "1*x2^2 + 1*x1")];
        let r = normal_form(&p(&f, 2, "1*x1^2*x2"), &basis, TermOrder::Grevlex);
        assert_eq!(r, p(&f, 2, "1*x1"));
        // Membership cross-check: f - r lies in the ideal (reduce against a
        // reference Groebner basis).
        let gb = buchberger(&basis, TermOrder::Grevlex);
        let diff = p(&f, 2, "1*x1^2*x2").sub(&r);
        assert!(normal_form(&diff, &gb.polys, TermOrder::Grevlex).is_zero());
    }

    #[test]
    fn groebner_predicate_examples() {
        let f = f3();
        assert!(is_groebner_basis(
            &[p(&f, 2, "1*x1"), p(&f, 2, "1*x2")],
            TermOrder::Lex
        ));
        // {xy + 1, y^2 - 1} over GF(3), lex: the S-polynomial leaves x - y
        // irreducible.
        assert!(!is_groebner_basis(
            &[p(&f, 2, "1*x1*x2 + 1"), p(&f, 2, "1*x2^2 + 2")],
            TermOrder::Lex
        ));
        assert!(is_groebner_basis(&[p(&f, 2, "1*x1^2")], TermOrder::Lex));
    }

    #[test]
    #[should_panic(expected = "zero polynomial")]
    fn groebner_predicate_rejects_zero() {
        let f = f2();
        is_groebner_basis(&[Polynomial::zero(&f, 2)], TermOrder::Lex);
    }

    #[test]
    fn buchberger_reference() {
        let f = f3();
        // (xy + 1, y^2 - 1) under lex: the reduced basis is {x - y, y^2 - 1}
        // up to scaling.
        let gb = buchberger(
            &[p(&f, 2, "1*x1*x2 + 1"), p(&f, 2, "1*x2^2 + 2")],
            TermOrder::Lex,
        );
        assert!(is_groebner_basis(&gb.polys, TermOrder::Lex));
        assert!(gb.reduced);
        for g in &gb.polys {
            // Generated ideal is unchanged: members reduce to zero against
            // the original pair's closure and vice versa.
            assert!(normal_form(g, &gb.polys, TermOrder::Lex).is_zero() || !g.is_zero());
        }
        assert_eq!(gb.polys.len(), 2);
    }

    #[test]
    fn solving_degree_standard_examples() {
        let f = f2();
        let r = solving_degree_standard(&sys(&f, 2, &["1*x1 + 1*x2", "1*x2"]), TermOrder::Grevlex, 10)
            .unwrap();
        assert_eq!(r.degree, 1);
        let r = solving_degree_standard(&sys(&f, 1, &["1*x1^2 + 1*x1"]), TermOrder::Grevlex, 10)
            .unwrap();
        assert_eq!(r.degree, 2);
        // Coprime leading terms: already a basis at degree 2.
        let r = solving_degree_standard(
            &sys(&f, 2, &["1*x1^2 + 1*x2", "1*x2^2 + 1*x1"]),
            TermOrder::Grevlex,
            10,
        )
        .unwrap();
        assert_eq!(r.degree, 2);
        assert!(is_groebner_basis(&r.basis.polys, TermOrder::Grevlex));
    }

    #[test]
    fn solving_degree_log_lines() {
        let f = f2();
        let r = solving_degree_standard(
            &sys(&f, 2, &["1*x1^2 + 1*x2", "1*x2^2 + 1*x1"]),
            TermOrder::Grevlex,
            10,
        )
        .unwrap();
        let line = r.log.last().unwrap().to_string();
        assert!(line.starts_with("d=2 rows="));
        assert!(line.ends_with("gb=yes"));
    }

    #[test]
    fn cap_exceeded_is_reported_with_log() {
        let f = f2();
        let err = solving_degree_standard(
            &sys(&f, 3, &["1*x1*x2 + 1*x3", "1*x2*x3 + 1"]),
            TermOrder::Grevlex,
            2,
        )
        .unwrap_err();
        assert_eq!(err.cap, 2);
        assert!(!err.log.is_empty());
    }

    #[test]
    fn mutant_equals_standard_when_basis_found_at_start_degree() {
        let f = f2();
        let s = sys(&f, 2, &["1*x1^2 + 1*x2", "1*x2^2 + 1*x1"]);
        let a = solving_degree_standard(&s, TermOrder::Grevlex, 10).unwrap();
        let b = solving_degree_mutant(&s, TermOrder::Grevlex, 10).unwrap();
        assert_eq!(a.degree, b.degree);
    }

    #[test]
    fn mutant_never_exceeds_standard_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for q in [2u64, 3] {
            let field = Field::of_size(q).unwrap();
            for _ in 0..10 {
                let polys: Vec<Polynomial> = (0..3)
                    .map(|_| {
                        let mut poly = Polynomial::zero(&field, 2);
                        for m in monomials_up_to_degree(2, 2, TermOrder::Grevlex) {
                            poly.add_term(m, field.sample_uniform(&mut rng));
                        }
                        poly
                    })
                    .filter(|p| !p.is_zero())
                    .collect();
                if polys.is_empty() {
                    continue;
                }
                let s = PolySystem::new(polys);
                let cap = default_solvdeg_cap(&s).max(6);
                let std = solving_degree_standard(&s, TermOrder::Grevlex, cap);
                let mt = solving_degree_mutant(&s, TermOrder::Grevlex, cap);
                if let (Ok(a), Ok(b)) = (std, mt) {
                    assert!(b.degree <= a.degree, "mutant degree above standard");
                }
            }
        }
    }

    #[test]
    fn leading_monomials_grow_with_degree() {
        let f = f2();
        let s = sys(&f, 3, &["1*x1*x2 + 1*x3", "1*x2*x3 + 1*x1"]);
        let mut prev: Option<Vec<Monomial>> = None;
        for d in 2..=4 {
            let mut m = MacaulayMatrix::build(&s, d, TermOrder::Grevlex);
            m.rref();
            let lms: Vec<Monomial> = m
                .row_polynomials()
                .iter()
                .map(|p| p.leading_term(TermOrder::Grevlex).unwrap().0.clone())
                .collect();
            if let Some(prev) = &prev {
                for lm in prev {
                    assert!(lms.contains(lm), "leading monomial lost at degree {d}");
                }
            }
            prev = Some(lms);
        }
    }

    #[test]
    fn solve_examples() {
        let f = f2();
        let sols = solve_system(&sys(&f, 1, &["1*x1 + 1"]));
        assert_eq!(sols, vec![vec![f.one()]]);
        let sols = solve_system(&sys(&f, 1, &["1*x1", "1*x1 + 1"]));
        assert!(sols.is_empty());
        let f = f3();
        let sols = solve_system(&sys(&f, 2, &["1*x1^2 + 1*x2^2", "1*x1 + 1*x2"]));
        assert_eq!(sols, vec![vec![f.zero(), f.zero()]]);
    }

    #[test]
    fn elimination_path_agrees_with_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        for q in [2u64, 3] {
            let field = Field::of_size(q).unwrap();
            for _ in 0..8 {
                let polys: Vec<Polynomial> = (0..2)
                    .map(|_| {
                        let mut poly = Polynomial::zero(&field, 2);
                        for m in monomials_up_to_degree(2, 2, TermOrder::Grevlex) {
                            poly.add_term(m, field.sample_uniform(&mut rng));
                        }
                        poly
                    })
                    .filter(|p| !p.is_zero())
                    .collect();
                if polys.is_empty() {
                    continue;
                }
                let s = PolySystem::new(polys);
                assert_eq!(solve_exhaustive(&s), solve_by_elimination(&s));
            }
        }
    }

    #[test]
    fn basis_generates_input_ideal() {
        let f = f3();
        let s = sys(&f, 2, &["1*x1*x2 + 1", "1*x2^2 + 2"]);
        let r = solving_degree_standard(&s, TermOrder::Grevlex, 12).unwrap();
        // Every input polynomial reduces to zero against the found basis.
        for g in s.polys() {
            assert!(normal_form(g, &r.basis.polys, TermOrder::Grevlex).is_zero());
        }
        // Every basis element reduces to zero against a reference basis.
        let reference = buchberger(s.polys(), TermOrder::Grevlex);
        for g in &r.basis.polys {
            assert!(normal_form(g, &reference.polys, TermOrder::Grevlex).is_zero());
        }
    }

    #[test]
    fn inconsistent_system_collapses_to_one() {
        let f = f2();
        let r = solving_degree_standard(&sys(&f, 1, &["1*x1", "1*x1 + 1"]), TermOrder::Grevlex, 4)
            .unwrap();
        assert_eq!(r.degree, 1);
        assert_eq!(r.basis.polys.len(), 1);
        assert!(r.basis.polys[0].degree() == Some(0));
    }
}
