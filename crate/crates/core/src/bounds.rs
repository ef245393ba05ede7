//! Closed-form upper bounds for the degree of regularity and the solving
//! degrees of algebraically random systems of equal-degree polynomials.
//!
//! The bounds come in two families. For a system of m degree-D polynomials in
//! n variables, the interval position of m - n in the σ table yields a bound
//! on the degree of regularity, and from it bounds on the mutant and (with
//! field equations, via the 2·d_reg - 2 inequality) standard solving degrees.
//! For D >= q there is a tighter family indexed by m itself via the η counts,
//! plus an exact overdetermined case once m exceeds the dimension of the
//! degree-D part modulo the power ideal.
//!
//! All bounds that pass through the lex-plus-powers comparison are
//! conditional on the Eisenbud-Green-Harris conjecture; reports carry that
//! flag explicitly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::{monomials_of_degree, Monomial, TermOrder};

/// C(n, k) with the combinatorial convention: zero when k < 0, n < 0, or
/// k > n. Exact big-integer arithmetic; the CLI accepts parameters where
/// these exceed 64 bits.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Parameter errors for the bound formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundError {
    /// m < n: fewer polynomials than variables.
    FewerThanVariables { m: u64, n: u32 },
    /// m - n exceeds the number of degree-D monomials other than pure powers,
    /// so the top parts cannot be linearly independent.
    TooManyPolynomials { m: u64, max: BigInt },
    /// The degree is outside [q, n(q-1)] for the field-equation bounds.
    DegreeOutOfRange { d: u32, lo: u32, hi: u32 },
    /// Degenerate parameters (n = 0, D = 0, m = 0, ...).
    BadParams(String),
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundError::FewerThanVariables { m, n } => {
                write!(f, "need m >= n, got m = {m}, n = {n}")
            }
            BoundError::TooManyPolynomials { m, max } => write!(
                f,
                "m = {m} exceeds the range of linearly independent systems (max m = {max})"
            ),
            BoundError::DegreeOutOfRange { d, lo, hi } => {
                write!(f, "degree {d} outside the applicable range [{lo}, {hi}]")
            }
            BoundError::BadParams(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for BoundError {}

/// σ_{k,t}: the position of the smallest (D, k, D-t)-type monomial in the
/// decreasing lex list of degree-D monomials other than the pure powers
/// x_i^D. Defined for 1 <= k <= n-1 and 0 <= t <= D-1; σ_{1,0} = 0 and
/// σ_{k,0} = σ_{k-1,D-1}.
pub fn sigma_equal_degree(n: u32, d: u32, k: u32, t: u32) -> BigInt {
    assert!(n >= 2 && (1..n).contains(&k), "need 1 <= k <= n-1");
    assert!(d >= 1 && t <= d - 1, "need 0 <= t <= D-1");
    let (n, d, k, t) = (n as i64, d as i64, k as i64, t as i64);
    let mut acc = BigInt::zero();
    for i in 1..=k {
        for j in 1..=d - 1 {
            acc += binomial(n - i - 1 + j, j);
        }
    }
    for j in t + 1..=d - 1 {
        acc -= binomial(n - k - 1 + j, j);
    }
    acc
}

/// The interval position (k, t) of a bound computation. k = 0 encodes the
/// m = n sentinel, where t = D - 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub k: u32,
    pub t: u32,
}

impl Interval {
    pub fn is_sentinel(&self) -> bool {
        self.k == 0
    }
}

/// Locates the unique (k, t) with σ_{k,t-1} < m - n <= σ_{k,t}; returns the
/// sentinel (0, D-1) when m = n.
pub fn locate_interval_equal_degree(n: u32, m: u64, d: u32) -> Result<Interval, BoundError> {
    if n == 0 || d == 0 {
        return Err(BoundError::BadParams(format!("need n >= 1 and D >= 1, got n = {n}, D = {d}")));
    }
    if m < n as u64 {
        return Err(BoundError::FewerThanVariables { m, n });
    }
    if m == n as u64 {
        return Ok(Interval { k: 0, t: d - 1 });
    }
    let excess = BigInt::from(m - n as u64);
    if n >= 2 && d >= 2 {
        for k in 1..n {
            let low = sigma_equal_degree(n, d, k, 0);
            if excess <= low {
                continue;
            }
            for t in 1..d {
                if excess <= sigma_equal_degree(n, d, k, t) {
                    return Ok(Interval { k, t });
                }
            }
        }
    }
    let max = if n >= 2 && d >= 2 {
        sigma_equal_degree(n, d, n - 1, d - 1)
    } else {
        BigInt::zero()
    };
    Err(BoundError::TooManyPolynomials {
        m,
        max: max + n as u64,
    })
}

/// Upper bound (D - t) + (n - k)(D - 1) for the degree of regularity of an
/// algebraically random system of m degree-D polynomials in n variables.
/// EGH-conditional; for m = n the value is n(D-1) + 1 and unconditional.
pub fn dreg_bound_equal_degree(n: u32, m: u64, d: u32) -> Result<u32, BoundError> {
    let iv = locate_interval_equal_degree(n, m, d)?;
    Ok(dreg_bound_at(n, d, iv))
}

fn dreg_bound_at(n: u32, d: u32, iv: Interval) -> u32 {
    (d - iv.t) + (n - iv.k) * (d - 1)
}

/// Mutant solving-degree bound: the degree-of-regularity bound plus one.
/// EGH-conditional.
pub fn solvdeg_mutant_bound(n: u32, m: u64, d: u32) -> Result<u32, BoundError> {
    Ok(dreg_bound_equal_degree(n, m, d)? + 1)
}

/// Standard solving-degree bound 2 min{n(q-1), (n-k+1)(D-1) - t} for the
/// system with field equations appended. EGH-conditional and valid only when
/// d_reg of the plain system is at least q; the caller must verify that.
pub fn solvdeg_standard_bound_with_fieldeq(
    n: u32,
    m: u64,
    d: u32,
    q: u64,
) -> Result<u32, BoundError> {
    let nq1 = n * (q as u32 - 1);
    if d > nq1 {
        return Err(BoundError::DegreeOutOfRange { d, lo: 1, hi: nq1 });
    }
    let iv = locate_interval_equal_degree(n, m, d)?;
    let alt = (n - iv.k + 1) * (d - 1) - iv.t;
    Ok(2 * nq1.min(alt))
}

/// dim (R/(x_1^q, ..., x_n^q))_D by inclusion-exclusion: the number of
/// degree-D monomials with every exponent below q. Zero for D > n(q-1).
pub fn dim_quotient_power_ideal(n: u32, q: u64, d: u32) -> BigInt {
    let (ni, qi, di) = (n as i64, q as i64, d as i64);
    let mut acc = BigInt::zero();
    for i in 0..=(di / qi) {
        let term = binomial(ni, i) * binomial(ni + di - 1 - i * qi, ni - 1);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// η_{k,t} = dim (F_q[x_{k+1},...,x_n] / (x^q))_{D-q+t}: the number of
/// (D, k, q-t)-type monomials linearly independent modulo the power ideal.
/// Defined for 1 <= k <= n-1, 1 <= t <= q-1, q <= D.
pub fn eta(n: u32, q: u64, d: u32, k: u32, t: u32) -> BigInt {
    assert!(n >= 2 && (1..n).contains(&k), "need 1 <= k <= n-1");
    assert!(q >= 2 && (1..q as u32).contains(&t), "need 1 <= t <= q-1");
    assert!(d as u64 >= q, "need q <= D");
    let (ni, qi, di, ki, ti) = (n as i64, q as i64, d as i64, k as i64, t as i64);
    let mut acc = BigInt::zero();
    for i in 0..=((di + ti) / qi - 1) {
        let term = binomial(ni - ki, i) * binomial(ni - ki - 1 + di - (i + 1) * qi + ti, ni - ki - 1);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Which result produced a field-equation bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldEqCase {
    /// m is larger than dim (R/(x^q))_D: the degree of regularity equals D
    /// exactly on a dense open set, no EGH needed.
    Overdetermined,
    /// The η-interval bound; `exceptional` marks the boundary case where the
    /// bound improves to B - 1.
    Interval { exceptional: bool },
}

/// Bounds for F ∪ {x_i^q - x_i} when q <= D <= n(q-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEqBounds {
    pub case: FieldEqCase,
    /// Interval position by m itself (not m - n); None in the
    /// overdetermined case.
    pub interval: Option<Interval>,
    /// B = q - t + (n - k)(q - 1); None in the overdetermined case.
    pub b: Option<u32>,
    pub dreg_bound: u32,
    /// In the overdetermined case the degree of regularity is exactly D.
    pub dreg_is_exact: bool,
    pub solvdeg_standard_bound: u32,
    pub solvdeg_mutant_bound: u32,
    pub egh_conditional: bool,
}

/// Degree-of-regularity and solving-degree bounds for a degree-D system with
/// the field equations appended, in the range q <= D <= n(q-1).
///
/// When m exceeds dim (R/(x^q))_D the overdetermined case applies: d_reg is
/// exactly D, solvdeg^s <= 2D-2, solvdeg^m <= D+1. Otherwise (k, t) is
/// located with σ_{k,t-1} < m <= σ_{k,t} built from η, B = q-t+(n-k)(q-1),
/// and the bounds are B / 2(B-1) / B+1, improving to B-1 / 2(B-2) / B+1 in
/// the exceptional boundary case.
pub fn dreg_bound_with_fieldeq(
    n: u32,
    m: u64,
    d: u32,
    q: u64,
) -> Result<FieldEqBounds, BoundError> {
    if n == 0 || m == 0 {
        return Err(BoundError::BadParams(format!("need n >= 1, m >= 1, got n = {n}, m = {m}")));
    }
    let nq1 = n * (q as u32 - 1);
    if (d as u64) < q || d > nq1 {
        return Err(BoundError::DegreeOutOfRange { d, lo: q as u32, hi: nq1 });
    }
    let threshold = dim_quotient_power_ideal(n, q, d);
    if BigInt::from(m) > threshold {
        return Ok(FieldEqBounds {
            case: FieldEqCase::Overdetermined,
            interval: None,
            b: None,
            dreg_bound: d,
            dreg_is_exact: true,
            solvdeg_standard_bound: 2 * d - 2,
            solvdeg_mutant_bound: d + 1,
            egh_conditional: false,
        });
    }
    // Locate m in the cumulative η table: σ_{k,t} = Σ_{i<k} Σ_j η_{i,j} + Σ_{j<=t} η_{k,j}.
    if n < 2 {
        return Err(BoundError::TooManyPolynomials { m, max: threshold });
    }
    let target = BigInt::from(m);
    let mut cumulative = BigInt::zero();
    let mut found: Option<(u32, u32, bool)> = None;
    'outer: for k in 1..n {
        for t in 1..q as u32 {
            cumulative += eta(n, q, d, k, t);
            if target <= cumulative {
                found = Some((k, t, target == cumulative));
                break 'outer;
            }
        }
    }
    let Some((k, t, at_boundary)) = found else {
        return Err(BoundError::TooManyPolynomials { m, max: threshold });
    };
    let b = q as u32 - t + (n - k) * (q as u32 - 1);
    let exceptional = at_boundary
        && ((t != q as u32 - 1 && d as u64 >= 2 * q - t as u64 - 1)
            || (t == q as u32 - 1 && d as u64 >= 2 * q - 1));
    let dreg = if exceptional { b - 1 } else { b };
    Ok(FieldEqBounds {
        case: FieldEqCase::Interval { exceptional },
        interval: Some(Interval { k, t }),
        b: Some(b),
        dreg_bound: dreg,
        dreg_is_exact: false,
        solvdeg_standard_bound: 2 * (dreg - 1),
        solvdeg_mutant_bound: b + 1,
        egh_conditional: true,
    })
}

/// Verifies by enumeration that, within the decreasing lex list of degree-D
/// monomials, types are monotone: if u >= v then the type index k of u is
/// smaller, or equal with a larger x_k-exponent. In particular monomials of
/// one type form a contiguous interval. Intended for n <= 6, D <= 6.
pub fn lemma_interval_check(n: u32, d: u32) -> bool {
    let ms = monomials_of_degree(n as usize, d, TermOrder::Lex);
    let types: Vec<(u32, usize, u16)> = ms.iter().filter_map(Monomial::dka_type).collect();
    types.windows(2).all(|w| {
        let (_, k1, a1) = w[0];
        let (_, k2, a2) = w[1];
        k1 < k2 || (k1 == k2 && a1 >= a2)
    })
}

/// Assumption flags attached to a reported bound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    /// The bound relies on the Eisenbud-Green-Harris conjecture.
    pub egh_conditional: bool,
    /// The standard-algorithm bound requires d_reg(F) >= q, which the caller
    /// must verify on the concrete system.
    pub standard_needs_dreg_ge_q: bool,
}

/// Which bound family produced a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundCase {
    /// Plain equal-degree bounds (no field equations involved in the
    /// standard bound, which is then unavailable).
    EqualDegree,
    /// D < q with field equations: equal-degree d_reg bound plus the
    /// 2 min{...} standard bound.
    FieldEqSmallDegree,
    /// q <= D <= n(q-1) with field equations.
    FieldEq(FieldEqCase),
}

/// A bundle of bounds for one parameter set (n, m, D, q), as printed by the
/// CLI. The degree-of-regularity bound always satisfies dreg_bound >= D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    pub m: u64,
    pub degree: u32,
    pub q: Option<u64>,
    pub field_equations: bool,
    pub interval: Interval,
    pub case: BoundCase,
    pub dreg_bound: u32,
    /// Exact (not just an upper bound) in the overdetermined field-equation
    /// case.
    pub dreg_is_exact: bool,
    pub solvdeg_standard_bound: Option<u32>,
    pub solvdeg_mutant_bound: u32,
    pub assumptions: Assumptions,
}

impl BoundReport {
    /// One-line table row:
    /// "n m D q | k t | dreg<=X [EGH] | solvdeg_s<=Y [...] | solvdeg_m<=Z [...]".
    pub fn render(&self) -> String {
        let q = self
            .q
            .map(|q| q.to_string())
            .unwrap_or_else(|| "-".to_string());
        let egh = if self.assumptions.egh_conditional { " [EGH]" } else { "" };
        let dreg = if self.dreg_is_exact {
            format!("dreg={}", self.dreg_bound)
        } else {
            format!("dreg<={}{egh}", self.dreg_bound)
        };
        let std = match self.solvdeg_standard_bound {
            None => "solvdeg_s n/a".to_string(),
            Some(v) => {
                let mut flags = Vec::new();
                if self.assumptions.egh_conditional {
                    flags.push("EGH");
                }
                if self.assumptions.standard_needs_dreg_ge_q {
                    flags.push("needs dreg>=q");
                }
                let f = if flags.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", flags.join(", "))
                };
                format!("solvdeg_s<={v}{f}")
            }
        };
        format!(
            "n={} m={} D={} q={} | k={} t={} | {} | {} | solvdeg_m<={}{egh}",
            self.n,
            self.m,
            self.degree,
            q,
            self.interval.k,
            self.interval.t,
            dreg,
            std,
            self.solvdeg_mutant_bound,
        )
    }
}

/// Assembles the applicable bounds for (n, m, D) and optionally q with field
/// equations.
pub fn bound_report(
    n: u32,
    m: u64,
    d: u32,
    q: Option<u64>,
    field_equations: bool,
) -> Result<BoundReport, BoundError> {
    if field_equations {
        let q = q.ok_or_else(|| {
            BoundError::BadParams("field-equation bounds require the field size q".into())
        })?;
        if (d as u64) >= q {
            let fe = dreg_bound_with_fieldeq(n, m, d, q)?;
            return Ok(BoundReport {
                n,
                m,
                degree: d,
                q: Some(q),
                field_equations: true,
                interval: fe.interval.unwrap_or(Interval { k: 0, t: 0 }),
                case: BoundCase::FieldEq(fe.case),
                dreg_bound: fe.dreg_bound,
                dreg_is_exact: fe.dreg_is_exact,
                solvdeg_standard_bound: Some(fe.solvdeg_standard_bound),
                solvdeg_mutant_bound: fe.solvdeg_mutant_bound,
                assumptions: Assumptions {
                    egh_conditional: fe.egh_conditional,
                    standard_needs_dreg_ge_q: false,
                },
            });
        }
        let iv = locate_interval_equal_degree(n, m, d)?;
        let dreg = dreg_bound_at(n, d, iv);
        let std = solvdeg_standard_bound_with_fieldeq(n, m, d, q)?;
        return Ok(BoundReport {
            n,
            m,
            degree: d,
            q: Some(q),
            field_equations: true,
            interval: iv,
            case: BoundCase::FieldEqSmallDegree,
            dreg_bound: dreg,
            dreg_is_exact: false,
            solvdeg_standard_bound: Some(std),
            solvdeg_mutant_bound: dreg + 1,
            assumptions: Assumptions {
                egh_conditional: true,
                standard_needs_dreg_ge_q: true,
            },
        });
    }
    let iv = locate_interval_equal_degree(n, m, d)?;
    let dreg = dreg_bound_at(n, d, iv);
    Ok(BoundReport {
        n,
        m,
        degree: d,
        q,
        field_equations: false,
        interval: iv,
        case: BoundCase::EqualDegree,
        dreg_bound: dreg,
        dreg_is_exact: false,
        solvdeg_standard_bound: None,
        solvdeg_mutant_bound: dreg + 1,
        assumptions: Assumptions {
            egh_conditional: true,
            standard_needs_dreg_ge_q: false,
        },
    })
}

/// Brute-force σ oracle: counts degree-D monomials other than pure powers
/// that are lex-greater-or-equal to the smallest (D, k, D-t)-type monomial
/// x_k^{D-t} x_n^t.
pub fn sigma_bruteforce(n: u32, d: u32, k: u32, t: u32) -> u64 {
    let nv = n as usize;
    let mut ukt = vec![0u16; nv];
    ukt[k as usize - 1] = (d - t) as u16;
    ukt[nv - 1] += t as u16;
    let bound = Monomial::new(ukt);
    monomials_of_degree(nv, d, TermOrder::Lex)
        .into_iter()
        .filter(|m| !is_pure_power(m, d))
        .filter(|m| m >= &bound)
        .count() as u64
}

fn is_pure_power(m: &Monomial, d: u32) -> bool {
    m.exps().iter().any(|&e| e as u32 == d)
}

/// Brute-force η oracle: counts degree-(D-q+t) monomials in n-k variables
/// with all exponents below q.
pub fn eta_bruteforce(n: u32, q: u64, d: u32, k: u32, t: u32) -> u64 {
    let v = (n - k) as usize;
    let e = d + t - q as u32;
    monomials_of_degree(v, e, TermOrder::Lex)
        .into_iter()
        .filter(|m| m.exps().iter().all(|&x| (x as u64) < q))
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, ToPrimitive};

    #[test]
    fn sigma_table_n6_d3() {
        let expect = [
            [0u64, 5, 20],
            [20, 24, 34],
            [34, 37, 43],
            [43, 45, 48],
            [48, 49, 50],
        ];
        for k in 1..=5u32 {
            for t in 0..=2u32 {
                assert_eq!(
                    sigma_equal_degree(6, 3, k, t),
                    BigInt::from(expect[(k - 1) as usize][t as usize]),
                    "sigma({k},{t})"
                );
            }
        }
    }

    #[test]
    fn sigma_edge_identities() {
        for (n, d) in [(4u32, 3u32), (5, 4), (6, 3)] {
            assert_eq!(sigma_equal_degree(n, d, 1, 0), BigInt::zero());
            for k in 2..n {
                assert_eq!(
                    sigma_equal_degree(n, d, k, 0),
                    sigma_equal_degree(n, d, k - 1, d - 1)
                );
            }
        }
    }

    #[test]
    fn sigma_matches_bruteforce() {
        for n in 2..=5u32 {
            for d in 2..=5u32 {
                for k in 1..n {
                    for t in 0..d {
                        assert_eq!(
                            sigma_equal_degree(n, d, k, t).to_u64().unwrap(),
                            sigma_bruteforce(n, d, k, t),
                            "n={n} D={d} k={k} t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn interval_location_paper_examples() {
        assert_eq!(
            locate_interval_equal_degree(6, 12, 3).unwrap(),
            Interval { k: 1, t: 2 }
        );
        assert_eq!(
            locate_interval_equal_degree(6, 42, 3).unwrap(),
            Interval { k: 3, t: 1 }
        );
        assert_eq!(
            locate_interval_equal_degree(6, 54, 3).unwrap(),
            Interval { k: 4, t: 2 }
        );
        assert_eq!(
            locate_interval_equal_degree(6, 6, 3).unwrap(),
            Interval { k: 0, t: 2 }
        );
        assert!(matches!(
            locate_interval_equal_degree(6, 9999, 3),
            Err(BoundError::TooManyPolynomials { .. })
        ));
        assert!(matches!(
            locate_interval_equal_degree(6, 3, 3),
            Err(BoundError::FewerThanVariables { .. })
        ));
    }

    #[test]
    fn dreg_bounds_paper_examples() {
        assert_eq!(dreg_bound_equal_degree(6, 12, 3).unwrap(), 11);
        assert_eq!(dreg_bound_equal_degree(6, 42, 3).unwrap(), 8);
        assert_eq!(dreg_bound_equal_degree(6, 54, 3).unwrap(), 5);
        assert_eq!(dreg_bound_equal_degree(2, 2, 2).unwrap(), 3);
        assert_eq!(solvdeg_mutant_bound(6, 12, 3).unwrap(), 12);
        assert_eq!(solvdeg_mutant_bound(6, 54, 3).unwrap(), 6);
        assert_eq!(solvdeg_mutant_bound(2, 2, 2).unwrap(), 4);
    }

    #[test]
    fn dreg_bound_monotone_and_extremes() {
        // Non-increasing in m, stepping down by exactly 1 across interval
        // boundaries; n(D-1)+1 at m = n and D at the top of the range.
        for (n, d) in [(4u32, 2u32), (4, 3), (5, 2), (6, 3)] {
            let max_m = n as u64
                + sigma_equal_degree(n, d, n - 1, d - 1).to_u64().unwrap();
            let mut prev = None;
            for m in n as u64..=max_m {
                let b = dreg_bound_equal_degree(n, m, d).unwrap();
                if let Some(p) = prev {
                    assert!(b <= p, "bound must be non-increasing");
                    assert!(p - b <= 1, "bound steps down by at most 1");
                }
                prev = Some(b);
            }
            assert_eq!(
                dreg_bound_equal_degree(n, n as u64, d).unwrap(),
                n * (d - 1) + 1
            );
            assert_eq!(dreg_bound_equal_degree(n, max_m, d).unwrap(), d);
        }
    }

    #[test]
    fn tenti_bound_rainbow_values() {
        assert_eq!(solvdeg_standard_bound_with_fieldeq(4, 4, 2, 4).unwrap(), 8);
        assert_eq!(solvdeg_standard_bound_with_fieldeq(10, 10, 2, 4).unwrap(), 20);
        assert_eq!(solvdeg_standard_bound_with_fieldeq(6, 6, 2, 4).unwrap(), 12);
        // q = 9 gives the same formula value; applicability is the caller's
        // problem (flagged in the report).
        assert_eq!(solvdeg_standard_bound_with_fieldeq(4, 4, 2, 9).unwrap(), 8);
    }

    #[test]
    fn quotient_dimension_examples() {
        assert_eq!(dim_quotient_power_ideal(2, 2, 2), BigInt::from(1));
        assert_eq!(dim_quotient_power_ideal(3, 2, 2), BigInt::from(3));
        assert_eq!(dim_quotient_power_ideal(2, 2, 3), BigInt::zero());
        assert_eq!(dim_quotient_power_ideal(11, 2, 2), BigInt::from(55));
    }

    #[test]
    fn eta_examples_and_bruteforce() {
        assert_eq!(eta(3, 2, 2, 1, 1), BigInt::from(2));
        for n in 2..=5u32 {
            for q in 2..=4u64 {
                for d in q as u32..=(n * (q as u32 - 1)).min(5) {
                    for k in 1..n {
                        for t in 1..q as u32 {
                            assert_eq!(
                                eta(n, q, d, k, t).to_u64().unwrap(),
                                eta_bruteforce(n, q, d, k, t),
                                "n={n} q={q} D={d} k={k} t={t}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eta_vanishes_beyond_top_degree() {
        // η_{k,t} = 0 once D + t - q exceeds (n-k)(q-1).
        let v = eta(3, 2, 4, 2, 1); // D-q+t = 3 > (n-k)(q-1) = 1
        assert_eq!(v, BigInt::zero());
    }

    #[test]
    fn eta_totals_match_quotient_dimension() {
        // Summing η over the full (k, t) range counts every degree-D monomial
        // outside the power ideal.
        for n in 2..=4u32 {
            for q in 2..=3u64 {
                for d in q as u32..=n * (q as u32 - 1) {
                    let mut total = BigInt::zero();
                    for k in 1..n {
                        for t in 1..q as u32 {
                            total += eta(n, q, d, k, t);
                        }
                    }
                    assert_eq!(total, dim_quotient_power_ideal(n, q, d), "n={n} q={q} D={d}");
                }
            }
        }
    }

    #[test]
    fn fieldeq_bounds_small_case() {
        // n=3, q=2, D=2, m=2: interval (1,1), boundary but D < 2q-1, so the
        // plain case applies with B = 3.
        let fe = dreg_bound_with_fieldeq(3, 2, 2, 2).unwrap();
        assert_eq!(fe.interval, Some(Interval { k: 1, t: 1 }));
        assert_eq!(fe.b, Some(3));
        assert_eq!(fe.dreg_bound, 3);
        assert!(matches!(fe.case, FieldEqCase::Interval { exceptional: false }));
        assert!(fe.egh_conditional);
    }

    #[test]
    fn fieldeq_bounds_overdetermined_case() {
        // n=2, q=2, D=2, m=2 > dim(R/(x^q))_2 = 1.
        let fe = dreg_bound_with_fieldeq(2, 2, 2, 2).unwrap();
        assert_eq!(fe.case, FieldEqCase::Overdetermined);
        assert_eq!(fe.dreg_bound, 2);
        assert!(fe.dreg_is_exact);
        assert_eq!(fe.solvdeg_standard_bound, 2);
        assert_eq!(fe.solvdeg_mutant_bound, 3);
        assert!(!fe.egh_conditional);
    }

    #[test]
    fn fieldeq_bounds_gemss_rows() {
        // Squared GeMSS systems are quadratic over GF(2) in m variables.
        // (n, D_hfe) = (12, 4), a = 1: m = 11.
        let fe = dreg_bound_with_fieldeq(11, 11, 2, 2).unwrap();
        assert_eq!(fe.dreg_bound, 10);
        assert_eq!(fe.solvdeg_standard_bound, 18);
        // (8, 9), a = 1: m = 7.
        let fe = dreg_bound_with_fieldeq(7, 7, 2, 2).unwrap();
        assert_eq!(fe.dreg_bound, 6);
        assert_eq!(fe.solvdeg_standard_bound, 10);
        // (8, 9), a = 2: m = 6.
        let fe = dreg_bound_with_fieldeq(6, 6, 2, 2).unwrap();
        assert_eq!(fe.dreg_bound, 5);
        assert_eq!(fe.solvdeg_standard_bound, 8);
        // (24, 4) rows: m = 23, 22, 21.
        for (m, dreg, solv) in [(23u64, 22u32, 42u32), (22, 21, 40), (21, 20, 38)] {
            let fe = dreg_bound_with_fieldeq(m as u32, m, 2, 2).unwrap();
            assert_eq!(fe.dreg_bound, dreg);
            assert_eq!(fe.solvdeg_standard_bound, solv);
        }
    }

    #[test]
    fn fieldeq_degree_range_errors() {
        assert!(matches!(
            dreg_bound_with_fieldeq(3, 2, 1, 2),
            Err(BoundError::DegreeOutOfRange { .. })
        ));
        assert!(matches!(
            dreg_bound_with_fieldeq(3, 2, 4, 2),
            Err(BoundError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn interval_lemma_enumeration() {
        for n in 1..=5u32 {
            for d in 1..=5u32 {
                assert!(lemma_interval_check(n, d));
            }
        }
        assert!(lemma_interval_check(3, 3));
        assert!(lemma_interval_check(2, 2));
    }

    #[test]
    fn report_rendering() {
        let r = bound_report(6, 12, 3, None, false).unwrap();
        assert_eq!(r.dreg_bound, 11);
        assert!(r.render().contains("dreg<=11"));
        assert!(r.assumptions.egh_conditional);
        assert!(r.solvdeg_standard_bound.is_none());

        let r = bound_report(4, 4, 2, Some(4), true).unwrap();
        assert_eq!(r.solvdeg_standard_bound, Some(8));
        assert!(r.assumptions.standard_needs_dreg_ge_q);
        assert!(r.render().contains("solvdeg_s<=8"));

        let r = bound_report(11, 11, 2, Some(2), true).unwrap();
        assert_eq!(r.dreg_bound, 10);
        assert_eq!(r.solvdeg_standard_bound, Some(18));
        assert!(!r.assumptions.standard_needs_dreg_ge_q);
    }

    #[test]
    fn dreg_bound_at_least_degree() {
        for n in 2..=5u32 {
            for d in 2..=4u32 {
                let max_m =
                    n as u64 + sigma_equal_degree(n, d, n - 1, d - 1).to_u64().unwrap();
                for m in n as u64..=max_m {
                    assert!(dreg_bound_equal_degree(n, m, d).unwrap() >= d);
                }
            }
        }
    }

    #[test]
    fn big_binomials_do_not_overflow() {
        // Plausible CLI inputs overflow u64; make sure the big-integer path
        // carries them.
        let v = sigma_equal_degree(64, 64, 63, 63);
        assert!(v.is_positive());
        assert!(v > BigInt::from(u64::MAX));
    }
}
