//! Degree of regularity, LexPlusPowers ideals, algebraic randomness, and
//! semiregularity.
//!
//! The degree of regularity of a system F is the least d at which the ideal
//! of top homogeneous parts fills the whole degree-d space. For artinian
//! monomial ideals the same quantity is computed combinatorially (divisibility
//! enumeration), which serves as the independent oracle for the closed-form
//! LPP regularity formula.
//!
//! A system of m >= n polynomials is algebraically random when its top parts
//! contain a regular sequence in the n smallest prescribed degrees. For
//! equal-degree systems this is decided exactly: the top ideal contains such
//! a sequence over the closure iff it is zero-dimensional, iff the Hilbert
//! function vanishes by n(D-1)+1, and ranks do not change under field
//! extension. For mixed degrees a Monte Carlo search for an explicit regular
//! sequence is used; failure to find one reports "undetermined", never
//! "not random".

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::macaulay::{hilbert_function, ideal_dim_in_degree, MacaulayMatrix};
use crate::poly::{
    count_monomials_of_degree, monomials_of_degree, Monomial, PolySystem, Polynomial, TermOrder,
};

/// Errors raised by the operations in this module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityError {
    /// Randomness testing needs at least as many polynomials as variables.
    FewerThanVariables { m: usize, n: usize },
    /// The monomial ideal contains no pure power of some variable.
    NonArtinian { variable: usize },
    /// The requested segment dimension is outside the feasible range.
    TargetDimOutOfRange { target: u64, lo: u64, hi: u64 },
    /// The LPP regularity formula's preconditions fail.
    LppPrecondition(String),
    /// No non-positive coefficient within the provided series prefix, so the
    /// truncation point is not determined.
    AllPositivePrefix { len: usize },
}

impl fmt::Display for RegularityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegularityError::FewerThanVariables { m, n } => {
                write!(f, "need m >= n polynomials, got m = {m}, n = {n}")
            }
            RegularityError::NonArtinian { variable } => {
                write!(f, "no pure power of x{} among the generators", variable + 1)
            }
            RegularityError::TargetDimOutOfRange { target, lo, hi } => {
                write!(f, "target dimension {target} outside [{lo}, {hi}]")
            }
            RegularityError::LppPrecondition(s) => write!(f, "{s}"),
            RegularityError::AllPositivePrefix { len } => {
                write!(f, "all {len} coefficients positive; truncation undetermined")
            }
        }
    }
}

impl std::error::Error for RegularityError {}

/// Result of a degree-of-regularity computation with a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DregResult {
    Finite(u32),
    /// No degree up to the cap filled the space.
    InfiniteUpTo(u32),
}

impl DregResult {
    pub fn finite(self) -> Option<u32> {
        match self {
            DregResult::Finite(d) => Some(d),
            DregResult::InfiniteUpTo(_) => None,
        }
    }
}

impl fmt::Display for DregResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DregResult::Finite(d) => write!(f, "{d}"),
            DregResult::InfiniteUpTo(cap) => write!(f, ">{cap} (cap)"),
        }
    }
}

/// The least d <= cap with (F^top)_d = R_d, or the infinite-up-to-cap marker.
pub fn degree_of_regularity(sys: &PolySystem, cap: u32) -> DregResult {
    let tops = sys.tops();
    if tops.is_empty() {
        return DregResult::InfiniteUpTo(cap);
    }
    let n = sys.nvars();
    for d in 0..=cap {
        if ideal_dim_in_degree(&tops, d, TermOrder::Grevlex) == count_monomials_of_degree(n, d) {
            return DregResult::Finite(d);
        }
    }
    DregResult::InfiniteUpTo(cap)
}

/// Regularity of an artinian monomial ideal: the least d such that every
/// degree-d monomial is divisible by a generator. Pure monomial enumeration،
/// no linear algebra; this is the independent oracle for
/// [`lpp_regularity`].
pub fn artinian_regularity(gens: &[Monomial]) -> Result<u32, RegularityError> {
    assert!(!gens.is_empty(), "empty generator list");
    let n = gens[0].nvars();
    // Artinian iff a pure power of every variable appears.
    let mut power = vec![u32::MAX; n];
    for g in gens {
        if let Some(i) = pure_power_variable(g) {
            power[i] = power[i].min(g.degree());
        }
        if g.is_one() {
            return Ok(0);
        }
    }
    for (i, &p) in power.iter().enumerate() {
        if p == u32::MAX {
            return Err(RegularityError::NonArtinian { variable: i });
        }
    }
    let bound: u32 = power.iter().map(|&p| p - 1).sum::<u32>() + 1;
    for d in 0..=bound {
        let full = monomials_of_degree(n, d, TermOrder::Lex)
            .iter()
            .all(|m| gens.iter().any(|g| g.divides(m)));
        if full {
            return Ok(d);
        }
    }
    unreachable!("regularity of an artinian ideal is at most sum(c_i - 1) + 1");
}

fn pure_power_variable(m: &Monomial) -> Option<usize> {
    let mut nonzero = m.exps().iter().enumerate().filter(|&(_, &e)| e > 0);
    let (i, _) = nonzero.next()?;
    if nonzero.next().is_none() {
        Some(i)
    } else {
        None
    }
}

/// A (c_1,...,c_n; C)-LexPlusPowers ideal: pure powers x_i^{c_i} plus the
/// largest lex-segment in degree C realizing a prescribed dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LppIdeal {
    /// Pure-power exponents, ascending.
    pub powers: Vec<u32>,
    /// Degree of the lex-segment generators.
    pub seg_degree: u32,
    /// The segment, largest first (decreasing lex).
    pub seg_monomials: Vec<Monomial>,
}

impl LppIdeal {
    pub fn nvars(&self) -> usize {
        self.powers.len()
    }

    /// All monomial generators: the pure powers followed by the segment.
    pub fn generators(&self) -> Vec<Monomial> {
        let n = self.nvars();
        let mut gens: Vec<Monomial> = self
            .powers
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut e = vec![0u16; n];
                e[i] = c as u16;
                Monomial::new(e)
            })
            .collect();
        gens.extend(self.seg_monomials.iter().cloned());
        gens
    }
}

/// Builds the (c_1,...,c_n; C)-LPP ideal with dim L_C = `target_dim`: walk
/// the degree-C monomials in decreasing lex order, always taking monomials
/// already inside the power ideal, and otherwise taking monomials until the
/// target dimension is reached. This realizes the largest valid lex segment.
pub fn lpp_of(c_list: &[u32], seg_degree: u32, target_dim: u64) -> Result<LppIdeal, RegularityError> {
    let n = c_list.len();
    assert!(n >= 1, "empty power list");
    assert!(
        c_list.windows(2).all(|w| w[0] <= w[1]),
        "power exponents must be ascending"
    );
    let powers: Vec<Monomial> = c_list
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let mut e = vec![0u16; n];
            e[i] = c as u16;
            Monomial::new(e)
        })
        .collect();
    let all = monomials_of_degree(n, seg_degree, TermOrder::Lex);
    let in_powers = |m: &Monomial| powers.iter().any(|p| p.divides(m));
    let lo = all.iter().filter(|m| in_powers(m)).count() as u64;
    let hi = all.len() as u64;
    if target_dim < lo || target_dim > hi {
        return Err(RegularityError::TargetDimOutOfRange {
            target: target_dim,
            lo,
            hi,
        });
    }
    let mut seg = Vec::new();
    let mut dim = lo;
    for m in all {
        let forced = in_powers(&m);
        if !forced {
            if dim == target_dim {
                break;
            }
            dim += 1;
        }
        seg.push(m);
    }
    Ok(LppIdeal {
        powers: c_list.to_vec(),
        seg_degree,
        seg_monomials: seg,
    })
}

/// Closed-form regularity of an LPP ideal: with u = x_k^{t_k} v the smallest
/// lex monomial of the degree-C segment (v in the later variables),
/// reg = t_k + sum_{i>k} (c_i - 1).
///
/// Requires 2 <= C <= sum(c_i - 1) and a nonempty segment. The closed form
/// assumes the segment adds something beyond the power ideal; when every
/// segment monomial already lies inside the powers the ideal is the pure
/// power ideal itself and its regularity sum(c_i - 1) + 1 is returned
/// directly.
pub fn lpp_regularity(ideal: &LppIdeal) -> Result<u32, RegularityError> {
    let spread: u32 = ideal.powers.iter().map(|&c| c - 1).sum();
    if ideal.seg_degree < 2 || ideal.seg_degree > spread {
        return Err(RegularityError::LppPrecondition(format!(
            "need 2 <= C <= sum(c_i - 1) = {spread}, got C = {}",
            ideal.seg_degree
        )));
    }
    let Some(u) = ideal.seg_monomials.last() else {
        return Err(RegularityError::LppPrecondition(
            "empty lex segment: the ideal is the pure powers alone".into(),
        ));
    };
    let power_divides = |m: &Monomial| {
        ideal
            .powers
            .iter()
            .enumerate()
            .any(|(i, &c)| m.exps()[i] as u32 >= c)
    };
    // Trailing segment monomials inside the power ideal are redundant
    // generators; the formula is anchored at the smallest segment monomial
    // that actually extends the powers. If there is none, the ideal is the
    // pure power ideal, whose regularity is sum(c_i - 1) + 1 exactly.
    let anchor = ideal
        .seg_monomials
        .iter()
        .rev()
        .find(|m| !power_divides(m))
        .unwrap_or(u);
    if power_divides(anchor) {
        return Ok(spread + 1);
    }
    let (_, k, t_k) = anchor.dka_type().expect("segment monomials are nonconstant");
    let tail: u32 = ideal.powers[k..].iter().map(|&c| c - 1).sum();
    Ok(t_k as u32 + tail)
}

/// Verdict of the algebraic-randomness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Random,
    NotRandom,
    Undetermined,
}

/// How the verdict was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Equal degrees: exact decision via Hilbert-function vanishing.
    DeterministicArtinian,
    /// Mixed degrees: randomized search for a regular sequence.
    MonteCarlo,
}

/// Outcome of [`is_algebraically_random`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomnessVerdict {
    pub verdict: Verdict,
    pub method: Method,
    /// Degree at which the Hilbert function vanished (when random).
    pub witness_degree: Option<u32>,
    /// Monte Carlo trial count (when applicable).
    pub trials: Option<u32>,
}

impl fmt::Display for RandomnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.verdict {
            Verdict::Random => "random",
            Verdict::NotRandom => "not_random",
            Verdict::Undetermined => "undetermined",
        };
        let m = match self.method {
            Method::DeterministicArtinian => "deterministic-artinian",
            Method::MonteCarlo => "monte-carlo",
        };
        write!(f, "{v} method={m}")?;
        if let Some(w) = self.witness_degree {
            write!(f, " witness={w}")?;
        }
        if let Some(t) = self.trials {
            write!(f, " trials={t}")?;
        }
        Ok(())
    }
}

/// Default Monte Carlo trial count for mixed-degree randomness testing.
pub const DEFAULT_RANDOMNESS_TRIALS: u32 = 20;

/// Tests whether the system's top parts contain a regular sequence in the n
/// smallest prescribed degrees.
///
/// Equal-degree systems are decided exactly: the top ideal contains a regular
/// sequence of n degree-D forms over the closure iff its Hilbert function
/// vanishes by n(D-1)+1. Mixed-degree systems are sampled: `trials` random
/// combinations inside the ideal are tested for the regular-sequence Hilbert
/// function; any success certifies randomness, exhaustion reports
/// undetermined.
pub fn is_algebraically_random<R: Rng + ?Sized>(
    sys: &PolySystem,
    trials: u32,
    rng: &mut R,
) -> Result<RandomnessVerdict, RegularityError> {
    let (m, n) = (sys.len(), sys.nvars());
    if m < n {
        return Err(RegularityError::FewerThanVariables { m, n });
    }
    let tops = sys.tops();
    if let Some(d) = sys.equal_degree() {
        let witness_bound = n as u32 * d.saturating_sub(1) + 1;
        let h = hilbert_function(&tops, witness_bound);
        let witness = h.iter().position(|&v| v == 0);
        return Ok(match witness {
            Some(w) => RandomnessVerdict {
                verdict: Verdict::Random,
                method: Method::DeterministicArtinian,
                witness_degree: Some(w as u32),
                trials: None,
            },
            None => RandomnessVerdict {
                verdict: Verdict::NotRandom,
                method: Method::DeterministicArtinian,
                witness_degree: None,
                trials: None,
            },
        });
    }
    // Mixed degrees: Monte Carlo over random ideal elements in the n
    // smallest degrees.
    let mut degrees: Vec<u32> = tops.iter().map(|p| p.degree().unwrap()).collect();
    degrees.sort_unstable();
    let delta: Vec<u32> = degrees.iter().take(n).copied().collect();
    if delta.len() < n {
        // Fewer than n nonzero polynomials: no length-n sequence to find.
        return Ok(RandomnessVerdict {
            verdict: Verdict::Undetermined,
            method: Method::MonteCarlo,
            witness_degree: None,
            trials: Some(0),
        });
    }
    let socle: u32 = delta.iter().map(|&d| d - 1).sum();
    let predicted = koszul_hilbert(&delta, sys.nvars(), socle + 1);
    for _ in 0..trials {
        let mut trial_rng = ChaCha8Rng::seed_from_u64(rng.gen::<u64>());
        let Some(candidate) = sample_sequence(&tops, &delta, &mut trial_rng) else {
            continue;
        };
        let h = hilbert_function(&candidate, socle + 1);
        if h == predicted {
            return Ok(RandomnessVerdict {
                verdict: Verdict::Random,
                method: Method::MonteCarlo,
                witness_degree: Some(socle + 1),
                trials: Some(trials),
            });
        }
    }
    Ok(RandomnessVerdict {
        verdict: Verdict::Undetermined,
        method: Method::MonteCarlo,
        witness_degree: None,
        trials: Some(trials),
    })
}

/// Hilbert function of a regular sequence quotient: the coefficients of
/// prod (1 - z^{d_i}) / (1 - z)^n, which is a polynomial of degree
/// sum(d_i - 1) when the product runs over exactly n degrees.
fn koszul_hilbert(degrees: &[u32], n: usize, up_to: u32) -> Vec<u64> {
    let len = up_to as usize + 1;
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); len];
    coeffs[0] = BigInt::one();
    for &d in degrees {
        // Multiply by (1 - z^d).
        let mut next = coeffs.clone();
        for i in d as usize..len {
            let v = coeffs[i - d as usize].clone();
            next[i] -= v;
        }
        coeffs = next;
    }
    for _ in 0..n {
        // Multiply by 1/(1-z): prefix sums.
        for i in 1..len {
            let prev = coeffs[i - 1].clone();
            coeffs[i] += prev;
        }
    }
    coeffs
        .iter()
        .map(|c| c.to_u64().expect("Hilbert values fit in u64 at desk scale"))
        .collect()
}

/// Samples one candidate regular sequence: for each target degree, a random
/// element of the ideal of that degree (random homogeneous multipliers
/// against every top of compatible degree).
fn sample_sequence<R: Rng + ?Sized>(
    tops: &[Polynomial],
    delta: &[u32],
    rng: &mut R,
) -> Option<Vec<Polynomial>> {
    let field = tops[0].field().clone();
    let nvars = tops[0].nvars();
    let mut out = Vec::with_capacity(delta.len());
    for &target in delta {
        let mut g = Polynomial::zero(&field, nvars);
        for _ in 0..8 {
            g = Polynomial::zero(&field, nvars);
            for t in tops {
                let dt = t.degree().unwrap();
                if dt > target {
                    continue;
                }
                for m in monomials_of_degree(nvars, target - dt, TermOrder::Grevlex) {
                    let c = field.sample_uniform(rng);
                    if !c.is_zero() {
                        g = g.add(&t.mul_term(&m, c));
                    }
                }
            }
            if g.degree() == Some(target) {
                break;
            }
        }
        if g.degree() != Some(target) {
            return None;
        }
        out.push(g);
    }
    Some(out)
}

/// Pardue semiregularity of a homogeneous sequence, checked on every degree
/// up to `d_cap`: each multiplication map
/// (R/(f_1..f_{i-1}))_{e-d_i} -> (R/(f_1..f_{i-1}))_e
/// must have maximal rank. Ranks over GF(q) decide the closure-based
/// definition exactly, since rank is invariant under field extension.
pub fn is_semiregular(tops: &[Polynomial], d_cap: u32) -> bool {
    assert!(!tops.is_empty(), "empty sequence");
    assert!(
        tops.iter().all(|p| p.is_homogeneous() && !p.is_zero()),
        "semiregularity needs nonzero homogeneous input"
    );
    let nvars = tops[0].nvars();
    for i in 0..tops.len() {
        let prefix = &tops[..i];
        let d_i = tops[i].degree().unwrap();
        for e in d_i..=d_cap {
            let quotient_dim = |deg: u32| -> u64 {
                let full = count_monomials_of_degree(nvars, deg);
                if prefix.is_empty() {
                    full
                } else {
                    full - ideal_dim_in_degree(prefix, deg, TermOrder::Grevlex)
                }
            };
            let dom = quotient_dim(e - d_i);
            let cod = quotient_dim(e);
            let s1 = if prefix.is_empty() {
                0
            } else {
                ideal_dim_in_degree(prefix, e, TermOrder::Grevlex)
            };
            let mut with_f: Vec<Polynomial> = prefix.to_vec();
            with_f.push(tops[i].clone());
            let s2 = {
                let sys = PolySystem::new(with_f);
                let mut m = MacaulayMatrix::build_homogeneous(&sys, e, TermOrder::Grevlex);
                m.rref() as u64
            };
            // Rows of f_i in M_e use multipliers of degree exactly e - d_i,
            // so s2 - s1 is the rank of the multiplication map on the
            // quotient.
            if s2 - s1 != dom.min(cod) {
                return false;
            }
        }
    }
    true
}

/// Truncation of an integer power series prefix at its first non-positive
/// coefficient: returns ([p_0..p_delta], delta) with
/// delta = min{i : p_i <= 0} - 1.
pub fn truncated_series(coeffs: &[BigInt]) -> Result<(Vec<BigInt>, i64), RegularityError> {
    match coeffs.iter().position(|c| !c.is_positive()) {
        Some(i) => Ok((coeffs[..i].to_vec(), i as i64 - 1)),
        None => Err(RegularityError::AllPositivePrefix { len: coeffs.len() }),
    }
}

/// Predicted Hilbert series of R/(F^top) for a cryptographic semiregular
/// sequence (x_1^q - x_1, ..., x_n^q - x_n, f) with deg f = d:
/// [(1 - z^d)(1 + z + ... + z^{q-1})^n].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiregularPrediction {
    /// Coefficients of the truncated series [p(z)].
    pub truncation: Vec<BigInt>,
    /// Index of the last kept coefficient; -1 when the series starts
    /// non-positive.
    pub delta: i64,
    /// The underlying proposition assumes q > 2; q = 2 results are computed
    /// but flagged out of scope.
    pub proposition_applies: bool,
}

/// Exact expansion of (1 - z^d)(1 + z + ... + z^{q-1})^n followed by series
/// truncation. `d_max` bounds the initially examined prefix; it is extended
/// to the full (finite) polynomial if no non-positive coefficient shows up
/// early, so the truncation point is always found.
pub fn semiregular_hilbert_prediction(
    n: usize,
    q: u64,
    d: u32,
    d_max: u32,
) -> SemiregularPrediction {
    let applies = q > 2;
    if d == 0 {
        // 1 - z^0 = 0: the zero series.
        return SemiregularPrediction {
            truncation: vec![],
            delta: -1,
            proposition_applies: applies,
        };
    }
    let full_degree = d as usize + n * (q as usize - 1);
    let len = full_degree + 1;
    // (1 + z + ... + z^{q-1})^n
    let mut base: Vec<BigInt> = vec![BigInt::zero(); len];
    base[0] = BigInt::one();
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); len];
        for i in 0..len {
            if base[i].is_zero() {
                continue;
            }
            for j in 0..q as usize {
                if i + j < len {
                    let v = base[i].clone();
                    next[i + j] += v;
                }
            }
        }
        base = next;
    }
    // Multiply by (1 - z^d).
    let mut coeffs = base.clone();
    for i in d as usize..len {
        let v = base[i - d as usize].clone();
        coeffs[i] -= v;
    }
    let prefix_len = ((d_max as usize) + 1).min(len);
    let attempt = truncated_series(&coeffs[..prefix_len])
        .or_else(|_| truncated_series(&coeffs))
        .expect("the full product ends with a negative coefficient");
    SemiregularPrediction {
        truncation: attempt.0,
        delta: attempt.1,
        proposition_applies: applies,
    }
}
