//! Solves X = (s+1)(st+1) exactly under the thick-quadrangle constraints,
//! with the factorization machinery and fractional-power comparisons the
//! analyses are built on.
//!
//! The solver enumerates divisors of X−1 rather than scanning a range: s
//! must divide X−1, and X−1 turns out to have very few divisors in the
//! cases of interest. When X is a perfect power m^k, X−1 is first split
//! into its cyclotomic parts ∏_{d|k} Φ_d(m), which are factored
//! independently — essential when X−1 as a monolith hides a semiprime
//! whose prime halves lie in different parts.

use crate::config::Config;
use crate::nat::{nat, pow, power_lt, Nat};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

/// Primes below 10⁶, the trial-division bound.
static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let limit = 1_000_000usize;
    let mut sieve = vec![true; limit];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p < limit {
        if sieve[p] {
            let mut m = p * p;
            while m < limit {
                sieve[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    (2..limit as u64).filter(|&n| sieve[n as usize]).collect()
});

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // this base set decides primality for all n < 3.3×10²⁴
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality test: exact below 2⁶⁴, strong probable-prime with 25 fixed
/// bases above (deterministic output, error probability < 4⁻²⁵).
pub fn is_probable_prime(n: &Nat) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let one = Nat::one();
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().expect("n > 1 so n-1 > 0");
    let d = &nm1 >> s;
    'bases: for a in [
        2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
        83, 89, 97,
    ] {
        let mut x = nat(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho on 64-bit composites; always succeeds (any
/// composite this size splits in well under a millisecond).
fn rho_u64(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n));
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |y: u64| (mulmod(y, y, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn factor_u64_into(mut n: u64, out: &mut BTreeMap<Nat, u32>) {
    let mut stack = vec![];
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime_u64(m) {
            *out.entry(nat(m)).or_insert(0) += 1;
            continue;
        }
        let d = rho_u64(m);
        stack.push(d);
        stack.push(m / d);
    }
    n = 0;
    let _ = n;
}

/// Brent-cycle Pollard rho on big composites, bounded by the deadline.
fn rho_nat(n: &Nat, deadline: Instant) -> Option<Nat> {
    let one = Nat::one();
    let mut c = Nat::one();
    while Instant::now() < deadline {
        let mut y = nat(2);
        let mut r: u64 = 1;
        let mut q = Nat::one();
        let mut g = one.clone();
        let mut x = Nat::zero();
        let mut ys = Nat::zero();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k: u64 = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = (&y * &y + &c) % n;
                    let diff = if x >= y { &x - &y } else { &y - &x };
                    q = (&q * &diff) % n;
                }
                g = q.gcd(n);
                k += 128;
                if Instant::now() >= deadline {
                    return None;
                }
            }
            r *= 2;
        }
        if g == *n {
            g = one.clone();
            while g == one {
                ys = (&ys * &ys + &c) % n;
                let diff = if x >= ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if Instant::now() >= deadline {
                    return None;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        c += 1u32;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// (prime, exponent) pairs, ascending by prime.
    pub factors: Vec<(Nat, u32)>,
    pub complete: bool,
    /// Composite part that did not split within budget.
    pub unresolved_cofactor: Option<Nat>,
}

impl Factorization {
    /// Re-multiplies the factorization (including any unresolved part).
    pub fn value(&self) -> Nat {
        let resolved: Nat = self.factors.iter().map(|(p, e)| pow(p, *e)).product();
        match &self.unresolved_cofactor {
            Some(c) => resolved * c,
            None => resolved,
        }
    }

    /// All divisors of the resolved part, ascending.
    pub fn divisors(&self) -> Vec<Nat> {
        let mut ds = vec![Nat::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(ds.len() * (*e as usize + 1));
            for d in &ds {
                let mut v = d.clone();
                next.push(v.clone());
                for _ in 0..*e {
                    v *= p;
                    next.push(v.clone());
                }
            }
            ds = next;
        }
        ds.sort();
        ds
    }
}

/// Trial division to 10⁶, then Pollard rho under the wall-clock budget.
/// Incompleteness is reported in-band, never hidden.
pub fn factorize(x: &Nat, budget: Duration) -> Factorization {
    let deadline = Instant::now() + budget;
    let mut factors: BTreeMap<Nat, u32> = BTreeMap::new();
    let mut n = x.clone();
    if n <= Nat::one() {
        return Factorization { factors: vec![], complete: true, unresolved_cofactor: None };
    }
    if let Some(v) = n.to_u64() {
        let mut m = v;
        for &p in SMALL_PRIMES.iter() {
            if p * p > m {
                break;
            }
            while m % p == 0 {
                *factors.entry(nat(p)).or_insert(0) += 1;
                m /= p;
            }
        }
        factor_u64_into(m, &mut factors);
        return Factorization {
            factors: factors.into_iter().collect(),
            complete: true,
            unresolved_cofactor: None,
        };
    }
    for &p in SMALL_PRIMES.iter() {
        while (&n % p).is_zero() {
            *factors.entry(nat(p)).or_insert(0) += 1;
            n /= p;
        }
        if let Some(v) = n.to_u64() {
            if v > 1 {
                let mut m = v;
                for &q in SMALL_PRIMES.iter().skip_while(|&&q| q <= p) {
                    if q * q > m {
                        break;
                    }
                    while m % q == 0 {
                        *factors.entry(nat(q)).or_insert(0) += 1;
                        m /= q;
                    }
                }
                factor_u64_into(m, &mut factors);
            }
            return Factorization {
                factors: factors.into_iter().collect(),
                complete: true,
                unresolved_cofactor: None,
            };
        }
    }
    let mut cofactor = Nat::one();
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(v) = m.to_u64() {
            factor_u64_into(v, &mut factors);
            continue;
        }
        if is_probable_prime(&m) {
            *factors.entry(m).or_insert(0) += 1;
            continue;
        }
        match rho_nat(&m, deadline) {
            Some(d) => {
                let q = &m / &d;
                stack.push(d);
                stack.push(q);
            }
            None => cofactor *= &m,
        }
    }
    let complete = cofactor.is_one();
    Factorization {
        factors: factors.into_iter().collect(),
        complete,
        unresolved_cofactor: if complete { None } else { Some(cofactor) },
    }
}

/// Values Φ_d(m) for each divisor d of k, ascending in d; their product
/// is m^k − 1.
fn cyclotomic_values(m: &Nat, k: u32) -> Vec<Nat> {
    let mut vals: Vec<(u32, Nat)> = Vec::new();
    for d in (1..=k).filter(|d| k % d == 0) {
        let mut v = pow(m, d) - 1u32;
        for (e, pv) in &vals {
            if d % e == 0 {
                v /= pv;
            }
        }
        vals.push((d, v));
    }
    vals.into_iter().map(|(_, v)| v).collect()
}

/// Parameter pair of a putative thick generalised quadrangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GQParams {
    pub s: Nat,
    pub t: Nat,
    pub coprime: bool,
    pub t_eq_s_plus_2: bool,
    /// The dual pair (t,s) also passes the constraint battery (always the
    /// case — the constraints are symmetric — but recorded, not assumed).
    pub dual_admissible: bool,
}

impl GQParams {
    pub fn new(s: Nat, t: Nat) -> Self {
        let coprime = s.gcd(&t).is_one();
        let t_eq_s_plus_2 = t == &s + 2u32;
        let dual_admissible = admissible(&t, &s);
        GQParams { s, t, coprime, t_eq_s_plus_2, dual_admissible }
    }

    /// Number of points (s+1)(st+1) of a quadrangle with these parameters.
    pub fn num_points(&self) -> Nat {
        (&self.s + 1u32) * (&self.s * &self.t + 1u32)
    }

    pub fn s_u64(&self) -> Option<u64> {
        self.s.to_u64()
    }

    pub fn t_u64(&self) -> Option<u64> {
        self.t.to_u64()
    }
}

/// Thickness, Higman's inequality in both directions, and the classical
/// divisibility condition (s+t) | st(st+1) — all exact.
pub fn admissible(s: &Nat, t: &Nat) -> bool {
    let two = nat(2);
    if s < &two || t < &two {
        return false;
    }
    // s ≤ t² and t ≤ s²
    if power_lt(t, 2, s, 1) || power_lt(s, 2, t, 1) {
        return false;
    }
    let st = s * t;
    ((&st * (&st + 1u32)) % (s + t)).is_zero()
}

fn admissible_u64(s: u64, t: u64) -> bool {
    if s < 2 || t < 2 {
        return false;
    }
    let (s, t) = (s as u128, t as u128);
    if s > t * t || t > s * s {
        return false;
    }
    let st = s * t;
    (st * (st + 1)) % (s + t) == 0
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub x: Nat,
    /// Solutions ascending by s.
    pub params: Vec<GQParams>,
    /// False when the factorization was incomplete, i.e. further solutions
    /// could hide behind the unresolved cofactor's divisors.
    pub complete: bool,
}

impl SolveResult {
    pub fn pairs_u64(&self) -> Vec<(u64, u64)> {
        self.params
            .iter()
            .filter_map(|p| Some((p.s_u64()?, p.t_u64()?)))
            .collect()
    }
}

/// Solves (s+1)(st+1) = x by divisor enumeration of x−1.
pub fn solve(x: &Nat) -> SolveResult {
    solve_with_budget(x, Config::default().factoring_budget())
}

pub fn solve_with_budget(x: &Nat, budget: Duration) -> SolveResult {
    let mut params = Vec::new();
    if *x < nat(15) {
        // no thick quadrangle has fewer than 15 points
        return SolveResult { x: x.clone(), params, complete: true };
    }
    let xm1 = x - 1u32;
    let parts: Vec<Nat> = match crate::nat::perfect_power(x) {
        Some((m, k)) => cyclotomic_values(&m, k),
        None => vec![xm1.clone()],
    };
    debug_assert_eq!(parts.iter().product::<Nat>(), xm1);
    let mut merged: BTreeMap<Nat, u32> = BTreeMap::new();
    let mut cofactor = Nat::one();
    let mut complete = true;
    for part in &parts {
        let f = factorize(part, budget);
        complete &= f.complete;
        if let Some(c) = &f.unresolved_cofactor {
            cofactor *= c;
        }
        for (p, e) in f.factors {
            *merged.entry(p).or_insert(0) += e;
        }
    }
    let resolved = Factorization {
        factors: merged.into_iter().collect(),
        complete: true,
        unresolved_cofactor: None,
    };
    let mut candidates: BTreeSet<Nat> = BTreeSet::new();
    for d in resolved.divisors() {
        if !cofactor.is_one() {
            // certain divisors that include the whole unresolved part;
            // divisors using a proper factor of it are unknowable here
            candidates.insert(&d * &cofactor);
        }
        candidates.insert(d);
    }
    for s in candidates {
        if s < nat(2) {
            continue;
        }
        debug_assert!((&xm1 % &s).is_zero());
        let quotient = &xm1 / &s;
        if quotient.is_one() {
            continue;
        }
        let num = quotient - 1u32;
        let sp1 = &s + 1u32;
        if !(&num % &sp1).is_zero() {
            continue;
        }
        let t = num / sp1;
        if t < nat(2) || !admissible(&s, &t) {
            continue;
        }
        debug_assert_eq!((&s + 1u32) * (&s * &t + 1u32), *x);
        params.push(GQParams::new(s, t));
    }
    SolveResult { x: x.clone(), params, complete }
}

#[derive(Debug, thiserror::Error)]
#[error("scan_solve input {x} exceeds the 10^9 oracle bound")]
pub struct ScanRangeError {
    pub x: Nat,
}

/// Brute-force oracle: tries every s in range. Same contract as `solve`.
pub fn scan_solve(x: &Nat) -> Result<SolveResult, ScanRangeError> {
    let xv = x
        .to_u64()
        .filter(|&v| v <= 1_000_000_000)
        .ok_or_else(|| ScanRangeError { x: x.clone() })?;
    let mut params = Vec::new();
    if xv >= 15 {
        let xm1 = xv - 1;
        for s in 2..=xm1 {
            let q = xm1 / s;
            if q < 2 * s + 3 {
                break; // t ≥ 2 now impossible, and stays impossible as s grows
            }
            if xm1 % s != 0 || (q - 1) % (s + 1) != 0 {
                continue;
            }
            let t = (q - 1) / (s + 1);
            if admissible_u64(s, t) {
                params.push(GQParams::new(nat(s), nat(t)));
            }
        }
    }
    Ok(SolveResult { x: x.clone(), params, complete: true })
}

/// Exact truth of a^(na/da) < b^(nb/db) by cross-powering.
pub fn power_lt_frac(a: &Nat, (na, da): (u32, u32), b: &Nat, (nb, db): (u32, u32)) -> bool {
    assert!(da > 0 && db > 0, "exponent denominators must be positive");
    power_lt(a, na * db, b, nb * da)
}

/// Upper bound on fixed points of a nonidentity collineation of a GQ(s,t):
/// (s+1)(t+1) generally; when s ≥ t+3 a fixed grid can reach s² − 1... the
/// grid case allows up to s² points of which at least one is unfixed, so
/// the cap becomes max((s+1)(t+1), s²−1).
pub fn lemma22_max_fix(s: &Nat, t: &Nat) -> Nat {
    let base = (s + 1u32) * (t + 1u32);
    if *s >= t + 3u32 {
        base.max(s * s - 1u32)
    } else {
        base
    }
}

/// Exact verdicts for the fractional-exponent caps on fixed substructures
/// at the given parameters.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub s: Nat,
    pub t: Nat,
    pub num_points: Nat,
    pub cap: Nat,
    /// cap⁵ < X⁴
    pub four_fifths_holds: bool,
    /// cap⁹ < X⁷
    pub seven_ninths_holds: bool,
    /// cap¹²⁵ < X⁹⁴
    pub ninety_four_125ths_holds: bool,
    /// Present when t = s+2: the sharpened strict bounds, expected from
    /// s ≥ 3 and s ≥ 5 respectively.
    pub s_plus_2: Option<SPlus2Report>,
}

#[derive(Clone, Debug)]
pub struct SPlus2Report {
    /// cap⁹ < X⁷ (claimed for s ≥ 3)
    pub seven_ninths_strict: bool,
    /// cap¹⁸ < X¹³ (claimed for s ≥ 5)
    pub thirteen_eighteenths_strict: bool,
}

pub fn theorem_bound_report(s: &Nat, t: &Nat) -> BoundReport {
    let x = (s + 1u32) * (s * t + 1u32);
    let cap = lemma22_max_fix(s, t);
    let s_plus_2 = (*t == s + 2u32).then(|| SPlus2Report {
        seven_ninths_strict: power_lt(&cap, 9, &x, 7),
        thirteen_eighteenths_strict: power_lt(&cap, 18, &x, 13),
    });
    BoundReport {
        s: s.clone(),
        t: t.clone(),
        num_points: x.clone(),
        cap: cap.clone(),
        four_fifths_holds: power_lt(&cap, 5, &x, 4),
        seven_ninths_holds: power_lt(&cap, 9, &x, 7),
        ninety_four_125ths_holds: power_lt(&cap, 125, &x, 94),
        s_plus_2,
    }
}

/// Every admissible (s,t) with s ≤ s_max (and t ≤ s² by Higman), ascending.
pub fn admissible_pairs(s_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for s in 2..=s_max {
        for t in 2..=s * s {
            if admissible_u64(s, t) {
                out.push((s, t));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat::parse_nat;

    fn fac(x: u64) -> Vec<(u64, u32)> {
        factorize(&nat(x), Duration::from_secs(5))
            .factors
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn factorize_small_examples() {
        assert_eq!(fac(2519), vec![(11, 1), (229, 1)]);
        assert_eq!(fac(129599), vec![(19, 2), (359, 1)]); // 360² − 1 = 19²·359
        assert_eq!(fac(1_000_003), vec![(1_000_003, 1)]);
        let f = factorize(&nat(1), Duration::from_secs(1));
        assert!(f.factors.is_empty() && f.complete);
    }

    #[test]
    fn factorize_reports_unsplit_semiprime_in_band() {
        // product of the Mersenne primes 2⁸⁹−1 and 2¹²⁷−1: no budget this
        // side of a CPU-century splits it with rho
        let p = pow(&nat(2), 89) - 1u32;
        let q = pow(&nat(2), 127) - 1u32;
        let n = &p * &q;
        let f = factorize(&n, Duration::from_millis(50));
        assert!(!f.complete);
        assert_eq!(f.unresolved_cofactor, Some(n.clone()));
        assert_eq!(f.value(), n);
    }

    #[test]
    fn factorization_value_roundtrips() {
        for x in [2u64, 97, 5040, 129600, 62726400, 97336] {
            let f = factorize(&nat(x), Duration::from_secs(5));
            assert!(f.complete, "{x}");
            assert_eq!(f.value(), nat(x));
        }
    }

    #[test]
    fn divisor_enumeration_is_sorted_and_complete() {
        let f = factorize(&nat(360), Duration::from_secs(1));
        let ds = f.divisors();
        assert_eq!(ds.len(), 24);
        assert_eq!(ds.first(), Some(&nat(1)));
        assert_eq!(ds.last(), Some(&nat(360)));
        assert!(ds.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn probable_prime_spot_checks() {
        assert!(is_probable_prime(&(pow(&nat(2), 127) - 1u32)));
        assert!(!is_probable_prime(&(pow(&nat(2), 128) - 1u32)));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn solve_matches_published_parameter_table() {
        for (x, expect) in [
            (2520u64, vec![(11u64, 19u64)]),
            (20160, vec![(19, 53)]),
            (129600, vec![(19, 341)]),
            (62726400, vec![(89, 7831)]),
            (30821313600, vec![(419, 175141)]),
        ] {
            let r = solve(&nat(x));
            assert!(r.complete);
            assert_eq!(r.pairs_u64(), expect, "x = {x}");
        }
    }

    #[test]
    fn solve_small_point_counts() {
        assert_eq!(solve(&nat(15)).pairs_u64(), vec![(2, 2)]);
        assert_eq!(solve(&nat(27)).pairs_u64(), vec![(2, 4)]);
        assert_eq!(solve(&nat(112)).pairs_u64(), vec![(3, 9)]);
        assert!(solve(&nat(16)).pairs_u64().is_empty());
        assert!(solve(&nat(14)).pairs_u64().is_empty());
    }

    #[test]
    fn cubes_always_admit_the_obvious_solution() {
        for n in [60u64, 360, 7920, 40320] {
            let r = solve(&pow(&nat(n), 3));
            assert!(
                r.pairs_u64().contains(&(n - 1, n + 1)),
                "n = {n}: {:?}",
                r.pairs_u64()
            );
        }
    }

    #[test]
    fn cyclotomic_parts_multiply_back() {
        for (m, k) in [(7u64, 4u32), (360, 3), (2, 10), (40320, 4)] {
            let parts = cyclotomic_values(&nat(m), k);
            assert_eq!(parts.len(), (1..=k).filter(|d| k % d == 0).count());
            assert_eq!(parts.iter().product::<Nat>(), pow(&nat(m), k) - 1u32);
        }
    }

    #[test]
    fn splitting_cracks_the_large_cube_within_budget() {
        // the 93-digit cube whose x−1 hides a 71-digit semiprime across
        // cyclotomic parts; monolithic factoring cannot finish
        let omega = parse_nat("3843461129719173164826624000000").unwrap();
        let r = solve_with_budget(&pow(&omega, 3), Duration::from_secs(10));
        assert!(r.complete, "cyclotomic split must yield a complete factorization");
        let expect = vec![GQParams::new(&omega - 1u32, &omega + 1u32)];
        assert_eq!(r.params, expect);
    }

    #[test]
    fn scan_solve_agrees_with_solve_on_a_dense_range() {
        for x in 15u64..3000 {
            let a = solve(&nat(x));
            let b = scan_solve(&nat(x)).unwrap();
            assert!(a.complete);
            assert_eq!(a.pairs_u64(), b.pairs_u64(), "x = {x}");
        }
    }

    #[test]
    fn scan_solve_rejects_oversized_input() {
        assert!(scan_solve(&pow(&nat(10), 10)).is_err());
    }

    #[test]
    fn solution_flags_and_point_counts() {
        let r = solve(&nat(2520));
        let p = &r.params[0];
        assert!(p.coprime); // gcd(11,19) = 1
        assert!(!p.t_eq_s_plus_2);
        assert!(p.dual_admissible);
        assert_eq!(p.num_points(), nat(2520));
        let cube = solve(&pow(&nat(60), 3));
        assert!(cube.params.iter().any(|p| p.t_eq_s_plus_2));
    }

    #[test]
    fn power_comparison_examples() {
        // 15 ≥ 27^(4/5), the one standing exception
        assert!(!power_lt_frac(&nat(15), (1, 1), &nat(27), (4, 5)));
        assert!(power_lt_frac(&nat(7), (1, 1), &nat(15), (4, 5)));
        // 40 > 112^(7/9)
        assert!(!power_lt_frac(&nat(40), (1, 1), &nat(112), (7, 9)));
        // never both directions
        for (a, pa, b, pb) in [(15u64, (1, 1), 27u64, (4, 5)), (7, (2, 3), 11, (3, 5))] {
            let fwd = power_lt_frac(&nat(a), pa, &nat(b), pb);
            let bwd = power_lt_frac(&nat(b), pb, &nat(a), pa);
            assert!(!(fwd && bwd));
        }
    }

    #[test]
    fn fixed_point_cap_examples() {
        assert_eq!(lemma22_max_fix(&nat(2), &nat(4)), nat(15));
        assert_eq!(lemma22_max_fix(&nat(10), &nat(2)), nat(99));
        assert_eq!(
            lemma22_max_fix(&nat(40319), &nat(40321)),
            nat(1_625_783_040) // 40320 · 40322
        );
    }

    #[test]
    fn bound_report_examples() {
        let r = theorem_bound_report(&nat(3), &nat(9));
        assert_eq!(r.cap, nat(40));
        assert!(r.four_fifths_holds); // 40⁵ = 102400000 < 112⁴ = 157351936
        let e = theorem_bound_report(&nat(2), &nat(4));
        assert!(!e.four_fifths_holds); // 15⁵ > 27⁴
        assert!(e.s_plus_2.is_some());
    }

    #[test]
    fn s_plus_2_bounds_kick_in_at_the_stated_ranks() {
        for s in 2u64..40 {
            let rep = theorem_bound_report(&nat(s), &nat(s + 2));
            let sp = rep.s_plus_2.expect("t = s+2");
            assert_eq!(sp.seven_ninths_strict, s >= 3, "s = {s}");
            assert_eq!(sp.thirteen_eighteenths_strict, s >= 5, "s = {s}");
        }
    }

    #[test]
    fn admissible_pair_scanner_matches_known_small_orders() {
        let pairs = admissible_pairs(5);
        assert!(pairs.contains(&(2, 2)));
        assert!(pairs.contains(&(2, 4)));
        assert!(pairs.contains(&(3, 9)));
        assert!(pairs.contains(&(4, 16)));
        assert!(!pairs.contains(&(2, 3))); // fails (s+t) | st(st+1)
        assert!(!pairs.contains(&(3, 4)));
        // classical small orders all admissible
        for (s, t) in [(3, 3), (3, 5), (4, 4), (5, 5), (4, 6)] {
            assert!(admissible_u64(s, t), "({s},{t})");
        }
    }

    #[test]
    fn main_branch_cap_holds_for_all_s_le_200_with_s_le_t() {
        for (s, t) in admissible_pairs(200) {
            if s < 3 || s > t {
                continue;
            }
            let cap = (s + 1) * (t + 1);
            let x = nat(s + 1) * nat(s * t + 1);
            assert!(
                power_lt(&nat(cap), 5, &x, 4),
                "cap^5 >= X^4 at ({s},{t})"
            );
        }
    }
}
