//! Exact natural-number arithmetic helpers.
//!
//! Every inequality in this crate is decided by computing both sides as
//! arbitrary-precision integers. Nothing here ever rounds: comparisons of the
//! form `a^j < b^k` are evaluated by raising both sides exactly, which keeps
//! razor-thin margins (some checks differ by well under 0.2%) honest.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// Arbitrary-precision nonnegative integer used throughout the crate.
pub type Nat = BigUint;

/// Convenience constructor from a machine word.
pub fn nat(x: u64) -> Nat {
    Nat::from(x)
}

/// `base^exp` computed exactly.
pub fn pow(base: &Nat, exp: u32) -> Nat {
    base.pow(exp)
}

/// Exact comparison of `a^aj` against `b^bk` without ever materialising
/// floating point. Returns the `Ordering` of the two powers.
pub fn cmp_powers(a: &Nat, aj: u32, b: &Nat, bk: u32) -> Ordering {
    // Cheap bit-length screen first: if the bit-length intervals are disjoint
    // the answer is known without computing the full powers.
    let abits = a.bits().saturating_mul(u64::from(aj));
    let bbits = b.bits().saturating_mul(u64::from(bk));
    if a.is_zero() || b.is_zero() || aj == 0 || bk == 0 {
        return pow(a, aj).cmp(&pow(b, bk));
    }
    // a^aj has bit length in ((abits - aj), abits]; same for b.
    if abits < bbits.saturating_sub(u64::from(bk)) {
        return Ordering::Less;
    }
    if bbits < abits.saturating_sub(u64::from(aj)) {
        return Ordering::Greater;
    }
    pow(a, aj).cmp(&pow(b, bk))
}

/// `a^aj < b^bk`, exactly.
pub fn power_lt(a: &Nat, aj: u32, b: &Nat, bk: u32) -> bool {
    cmp_powers(a, aj, b, bk) == Ordering::Less
}

/// Largest `r` with `r^k <= n`, plus whether the root is exact.
pub fn integer_root(n: &Nat, k: u32) -> (Nat, bool) {
    assert!(k >= 1, "root index must be positive");
    let r = n.nth_root(k);
    let exact = pow(&r, k) == *n;
    (r, exact)
}

/// Decomposes `n` as `base^k` with `k` maximal (`k >= 2`), if possible.
/// Returns `None` when `n < 4` or `n` is not a perfect power.
pub fn perfect_power(n: &Nat) -> Option<(Nat, u32)> {
    if n < &nat(4) {
        return None;
    }
    let max_k = n.bits() as u32; // 2^bits > n, so any exponent is below this
    for k in (2..=max_k).rev() {
        let (r, exact) = integer_root(n, k);
        if exact && r > Nat::one() {
            return Some((r, k));
        }
    }
    None
}

/// `n!` computed exactly.
pub fn factorial(n: u64) -> Nat {
    let mut acc = Nat::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Parses an ASCII decimal string into a `Nat`.
pub fn parse_nat(s: &str) -> Option<Nat> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse::<Nat>().ok()
}
