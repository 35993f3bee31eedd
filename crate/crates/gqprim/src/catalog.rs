//! Catalogue of the non-Abelian finite simple groups used throughout:
//! identifiers, validity rules, and exact orders.

use crate::nat::{factorial, nat, pow, Nat};
use crate::data;
use num_traits::One;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;

/// Identifier for a finite simple group (or the Tits group).
///
/// Lie-type ranks follow the untwisted Dynkin label: `A { n, .. }` is
/// PSL_{n+1}(q), `TwoA` is PSU_{n+1}(q), `B`/`C` are Omega_{2n+1}(q) and
/// PSp_{2n}(q), `D`/`TwoD` are POmega^+/-_{2n}(q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupId {
    Alt(u64),
    Sporadic(String),
    Tits,
    A { n: u32, q: u64 },
    TwoA { n: u32, q: u64 },
    B { n: u32, q: u64 },
    C { n: u32, q: u64 },
    D { n: u32, q: u64 },
    TwoD { n: u32, q: u64 },
    E6(u64),
    TwoE6(u64),
    E7(u64),
    E8(u64),
    F4(u64),
    TwoF4(u64),
    G2(u64),
    TwoG2(u64),
    ThreeD4(u64),
    TwoB2(u64),
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupId::*;
        match self {
            Alt(n) => write!(f, "Alt{n}"),
            Sporadic(name) => write!(f, "{name}"),
            Tits => write!(f, "2F4(2)'"),
            A { n, q } => write!(f, "PSL{}({q})", n + 1),
            TwoA { n, q } => write!(f, "PSU{}({q})", n + 1),
            B { n, q } => write!(f, "Omega{}({q})", 2 * n + 1),
            C { n, q } => write!(f, "PSp{}({q})", 2 * n),
            D { n, q } => write!(f, "POmega+{}({q})", 2 * n),
            TwoD { n, q } => write!(f, "POmega-{}({q})", 2 * n),
            E6(q) => write!(f, "E6({q})"),
            TwoE6(q) => write!(f, "2E6({q})"),
            E7(q) => write!(f, "E7({q})"),
            E8(q) => write!(f, "E8({q})"),
            F4(q) => write!(f, "F4({q})"),
            TwoF4(q) => write!(f, "2F4({q})"),
            G2(q) => write!(f, "G2({q})"),
            TwoG2(q) => write!(f, "2G2({q})"),
            ThreeD4(q) => write!(f, "3D4({q})"),
            TwoB2(q) => write!(f, "Sz({q})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid group {group}: {rule}")]
pub struct InvalidGroup {
    pub group: String,
    pub rule: String,
}

fn reject(g: &GroupId, rule: &str) -> InvalidGroup {
    InvalidGroup { group: g.to_string(), rule: rule.to_string() }
}

/// Decomposes `q` as p^k by trial division, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = q;
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut m = q;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

static SPORADIC: Lazy<HashMap<String, (Nat, Nat)>> = Lazy::new(|| {
    let text = data::load("sporadic.txt");
    let mut map = HashMap::new();
    for rec in data::records(&text) {
        let mut parts = rec.split(',');
        let name = parts.next().expect("sporadic record: name");
        let order = crate::nat::parse_nat(parts.next().expect("sporadic record: order"))
            .expect("sporadic order must be decimal");
        let min_class = crate::nat::parse_nat(parts.next().expect("sporadic record: min class"))
            .expect("sporadic min class size must be decimal");
        map.insert(name.to_string(), (order, min_class));
    }
    map
});

/// The 26 sporadic group names accepted by `GroupId::Sporadic` (the Tits
/// group is carried in the same data table but has its own identifier).
pub fn sporadic_names() -> Vec<String> {
    let mut names: Vec<String> = SPORADIC.keys().filter(|n| *n != "Tits").cloned().collect();
    names.sort();
    names
}

pub(crate) fn sporadic_entry(name: &str) -> Option<(Nat, Nat)> {
    SPORADIC.get(name).cloned()
}

const ALT_DEGREE_CAP: u64 = 1_000_000;

impl GroupId {
    /// Checks the catalogue's simplicity/validity rules, reporting the
    /// specific rule violated.
    pub fn validate(&self) -> Result<(), InvalidGroup> {
        use GroupId::*;
        let pp = |q: u64| prime_power(q).map(|(p, k)| (p, k)).ok_or_else(|| reject(self, "field size is not a prime power"));
        match *self {
            Alt(n) => {
                if n < 5 {
                    return Err(reject(self, "alternating groups are simple only for degree >= 5"));
                }
                if n > ALT_DEGREE_CAP {
                    return Err(reject(self, "degree beyond catalogue cap 10^6"));
                }
            }
            Sporadic(ref name) => {
                if name == "Tits" {
                    return Err(reject(self, "the Tits group has its own identifier"));
                }
                if !SPORADIC.contains_key(name) {
                    return Err(reject(self, "unknown sporadic group name"));
                }
            }
            Tits => {}
            A { n, q } => {
                pp(q)?;
                if n < 1 {
                    return Err(reject(self, "linear rank must be >= 1"));
                }
                if n == 1 && (q == 2 || q == 3) {
                    return Err(reject(self, "PSL2(2) and PSL2(3) are solvable"));
                }
            }
            TwoA { n, q } => {
                pp(q)?;
                if n < 2 {
                    return Err(reject(self, "PSU2(q) duplicates PSL2(q); unitary rank must be >= 2"));
                }
                if n == 2 && q == 2 {
                    return Err(reject(self, "PSU3(2) is solvable"));
                }
            }
            B { n, q } | C { n, q } => {
                pp(q)?;
                if n < 2 {
                    return Err(reject(self, "rank-1 B/C duplicate PSL2(q); rank must be >= 2"));
                }
                if n == 2 && q == 2 {
                    return Err(reject(self, "Sp4(2) is not simple"));
                }
            }
            D { n, q } | TwoD { n, q } => {
                pp(q)?;
                if n < 4 {
                    return Err(reject(self, "orthogonal D-rank must be >= 4"));
                }
            }
            E6(q) | TwoE6(q) | E7(q) | E8(q) | F4(q) | ThreeD4(q) => {
                pp(q)?;
            }
            G2(q) => {
                pp(q)?;
                if q == 2 {
                    return Err(reject(self, "G2(2) is not simple"));
                }
            }
            TwoB2(q) | TwoF4(q) => {
                let (p, k) = pp(q)?;
                if p != 2 || k % 2 == 0 || q == 2 {
                    return Err(reject(self, "field size must be 2^(2m+1) with m >= 1"));
                }
            }
            TwoG2(q) => {
                let (p, k) = pp(q)?;
                if p != 3 || k % 2 == 0 || q == 3 {
                    return Err(reject(self, "field size must be 3^(2m+1) with m >= 1"));
                }
            }
        }
        Ok(())
    }

    pub fn is_simple_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// The quotient `d` appearing in this family's order and centraliser
    /// formulas; 1 for families with trivial centre considerations.
    pub fn diagonal_gcd(&self) -> Nat {
        use GroupId::*;
        let g = |a: u64, b: u64| nat(gcd(a, b));
        match *self {
            A { n, q } => g(n as u64 + 1, q - 1),
            TwoA { n, q } => g(n as u64 + 1, q + 1),
            B { n: _, q } | C { n: _, q } => g(2, q - 1),
            D { n, q } => nat(gcd4_pow(q, n, false)),
            TwoD { n, q } => nat(gcd4_pow(q, n, true)),
            E6(q) => g(3, q - 1),
            TwoE6(q) => g(3, q + 1),
            E7(q) => g(2, q - 1),
            _ => Nat::one(),
        }
    }

    /// Exact order of the simple group.
    pub fn order(&self) -> Result<Nat, InvalidGroup> {
        use GroupId::*;
        self.validate()?;
        let q = |v: u64| nat(v);
        Ok(match *self {
            Alt(n) => factorial(n) / nat(2),
            Sporadic(ref name) => SPORADIC[name].0.clone(),
            Tits => SPORADIC["Tits"].0.clone(),
            A { n, q } => linear_order(n, q, 1),
            TwoA { n, q } => linear_order(n, q, -1),
            B { n, q } | C { n, q } => symplectic_order(n, q),
            D { n, q } => orthogonal_even_order(n, q, 1),
            TwoD { n, q } => orthogonal_even_order(n, q, -1),
            E6(v) => eps_e6_order(v, 1),
            TwoE6(v) => eps_e6_order(v, -1),
            E7(v) => {
                let qq = q(v);
                let num = pow(&qq, 63) * prod_qi_minus_1(v, &[2, 6, 8, 10, 12, 14, 18]);
                num / nat(gcd(2, v - 1))
            }
            E8(v) => pow(&q(v), 120) * prod_qi_minus_1(v, &[2, 8, 12, 14, 18, 20, 24, 30]),
            F4(v) => pow(&q(v), 24) * prod_qi_minus_1(v, &[2, 6, 8, 12]),
            TwoF4(v) => {
                let qq = q(v);
                pow(&qq, 12) * (pow(&qq, 6) + 1u32) * (pow(&qq, 4) - 1u32) * (pow(&qq, 3) + 1u32) * (qq - 1u32)
            }
            G2(v) => {
                let qq = q(v);
                pow(&qq, 6) * (pow(&qq, 6) - 1u32) * (pow(&qq, 2) - 1u32)
            }
            TwoG2(v) => {
                let qq = q(v);
                pow(&qq, 3) * (pow(&qq, 3) + 1u32) * (qq - 1u32)
            }
            ThreeD4(v) => {
                let qq = q(v);
                pow(&qq, 12) * (pow(&qq, 8) + pow(&qq, 4) + 1u32) * (pow(&qq, 6) - 1u32) * (pow(&qq, 2) - 1u32)
            }
            TwoB2(v) => {
                let qq = q(v);
                pow(&qq, 2) * (pow(&qq, 2) + 1u32) * (qq - 1u32)
            }
        })
    }

    /// Convenience: the field characteristic for Lie-type identifiers.
    pub fn field(&self) -> Option<(u64, u32)> {
        use GroupId::*;
        match *self {
            A { q, .. } | TwoA { q, .. } | B { q, .. } | C { q, .. } | D { q, .. } | TwoD { q, .. }
            | E6(q) | TwoE6(q) | E7(q) | E8(q) | F4(q) | TwoF4(q) | G2(q) | TwoG2(q)
            | ThreeD4(q) | TwoB2(q) => prime_power(q),
            _ => None,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn gcd4_pow(q: u64, n: u32, twisted: bool) -> u64 {
    // gcd(4, q^n -+ 1) needs only q^n mod 4
    let qn_mod4 = if q % 2 == 0 { 0 } else { pow_mod4(q % 4, n) };
    let v = if twisted { (qn_mod4 + 1) % 4 } else { (qn_mod4 + 3) % 4 };
    if q % 2 == 0 {
        1
    } else if v == 0 {
        4
    } else {
        2 // q odd means q^n -+ 1 is even
    }
}

fn pow_mod4(mut b: u64, mut e: u32) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % 4;
        }
        b = b * b % 4;
        e >>= 1;
    }
    r
}

fn prod_qi_minus_1(q: u64, exps: &[u32]) -> Nat {
    let qq = nat(q);
    exps.iter().map(|&i| pow(&qq, i) - 1u32).product()
}

fn eps_e6_order(q: u64, eps: i8) -> Nat {
    let qq = nat(q);
    let pm = |i: u32| {
        let v = pow(&qq, i);
        if eps == 1 { v - 1u32 } else { v + 1u32 }
    };
    let d = if eps == 1 { gcd(3, q - 1) } else { gcd(3, q + 1) };
    let num = pow(&qq, 36)
        * (pow(&qq, 2) - 1u32)
        * pm(5)
        * (pow(&qq, 6) - 1u32)
        * (pow(&qq, 8) - 1u32)
        * pm(9)
        * (pow(&qq, 12) - 1u32);
    num / nat(d)
}

/// (q^i - eps^i) for the epsilon-twisted linear families.
fn q_eps_factor(q: u64, i: u32, eps: i8) -> Nat {
    let v = pow(&nat(q), i);
    if eps == 1 || i % 2 == 0 {
        v - 1u32
    } else {
        v + 1u32
    }
}

fn linear_order(n: u32, q: u64, eps: i8) -> Nat {
    let d = if eps == 1 { gcd(n as u64 + 1, q - 1) } else { gcd(n as u64 + 1, q + 1) };
    let mut num = pow(&nat(q), n * (n + 1) / 2);
    for i in 2..=n + 1 {
        num *= q_eps_factor(q, i, eps);
    }
    num / nat(d)
}

fn symplectic_order(n: u32, q: u64) -> Nat {
    let mut num = pow(&nat(q), n * n);
    for i in 1..=n {
        num *= pow(&nat(q), 2 * i) - 1u32;
    }
    num / nat(gcd(2, q - 1))
}

fn orthogonal_even_order(n: u32, q: u64, eps: i8) -> Nat {
    let d = gcd4_pow(q, n, eps == -1);
    let qn = pow(&nat(q), n);
    let head = if eps == 1 { qn - 1u32 } else { qn + 1u32 };
    let mut num = pow(&nat(q), n * (n - 1)) * head;
    for i in 1..n {
        num *= pow(&nat(q), 2 * i) - 1u32;
    }
    num / nat(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat::parse_nat;

    fn ord(g: GroupId) -> Nat {
        g.order().expect("valid group")
    }

    #[test]
    fn classical_small_orders_match_known_constants() {
        assert_eq!(ord(GroupId::Alt(5)), nat(60));
        assert_eq!(ord(GroupId::A { n: 1, q: 7 }), nat(168));
        assert_eq!(ord(GroupId::A { n: 2, q: 4 }), nat(20160));
        assert_eq!(ord(GroupId::TwoA { n: 2, q: 3 }), nat(6048));
        assert_eq!(ord(GroupId::C { n: 2, q: 3 }), nat(25920));
        assert_eq!(ord(GroupId::B { n: 3, q: 3 }), nat(4585351680));
        assert_eq!(ord(GroupId::D { n: 4, q: 2 }), nat(174182400));
        assert_eq!(ord(GroupId::TwoD { n: 4, q: 2 }), nat(197406720));
    }

    #[test]
    fn b_and_c_orders_coincide() {
        for (n, q) in [(2u32, 3u64), (3, 3), (4, 2), (5, 4), (2, 9)] {
            assert_eq!(ord(GroupId::B { n, q }), ord(GroupId::C { n, q }), "n={n} q={q}");
        }
    }

    #[test]
    fn exceptional_orders_match_pinned_constants() {
        let pins = [
            (GroupId::E6(2), "214841575522005575270400"),
            (GroupId::TwoE6(2), "76532479683774853939200"),
            (GroupId::E7(2), "7997476042075799759100487262680802918400"),
            (
                GroupId::E8(2),
                "337804753143634806261388190614085595079991692242467651576160959909068800000",
            ),
            (GroupId::F4(2), "3311126603366400"),
            (GroupId::G2(3), "4245696"),
            (GroupId::G2(4), "251596800"),
            (GroupId::G2(5), "5859000000"),
            (GroupId::ThreeD4(2), "211341312"),
            (GroupId::TwoF4(8), "264905352699586176614400"),
            (GroupId::TwoG2(27), "10073444472"),
            (GroupId::TwoB2(8), "29120"),
            (GroupId::TwoB2(32), "32537600"),
        ];
        for (g, expect) in pins {
            assert_eq!(ord(g.clone()), parse_nat(expect).unwrap(), "{g}");
        }
    }

    #[test]
    fn sporadic_orders_from_table() {
        assert_eq!(ord(GroupId::Sporadic("M11".into())), nat(7920));
        assert_eq!(ord(GroupId::Sporadic("J1".into())), nat(175560));
        assert_eq!(ord(GroupId::Tits), nat(17971200));
        assert_eq!(sporadic_names().len(), 26);
    }

    #[test]
    fn exclusion_rules_reject_non_simple_cases() {
        let bad = [
            GroupId::Alt(4),
            GroupId::Sporadic("Tits".into()),
            GroupId::Sporadic("X11".into()),
            GroupId::A { n: 1, q: 2 },
            GroupId::A { n: 1, q: 3 },
            GroupId::A { n: 1, q: 6 },
            GroupId::TwoA { n: 1, q: 4 },
            GroupId::TwoA { n: 2, q: 2 },
            GroupId::B { n: 2, q: 2 },
            GroupId::C { n: 2, q: 2 },
            GroupId::C { n: 1, q: 5 },
            GroupId::D { n: 3, q: 2 },
            GroupId::G2(2),
            GroupId::TwoB2(2),
            GroupId::TwoB2(4),
            GroupId::TwoF4(2),
            GroupId::TwoG2(3),
            GroupId::TwoG2(9),
        ];
        for g in bad {
            assert!(!g.is_simple_valid(), "{g} should be rejected");
        }
        assert!(GroupId::Tits.is_simple_valid());
        assert!(GroupId::TwoB2(8).is_simple_valid());
        assert!(GroupId::TwoG2(27).is_simple_valid());
        assert!(GroupId::A { n: 1, q: 4 }.is_simple_valid());
    }

    #[test]
    fn diagonal_gcd_examples() {
        assert_eq!(GroupId::A { n: 2, q: 4 }.diagonal_gcd(), nat(3));
        assert_eq!(GroupId::C { n: 4, q: 2 }.diagonal_gcd(), nat(1));
        assert_eq!(GroupId::D { n: 9, q: 3 }.diagonal_gcd(), nat(2));
        assert_eq!(GroupId::TwoA { n: 3, q: 3 }.diagonal_gcd(), nat(4));
        assert_eq!(GroupId::TwoD { n: 4, q: 3 }.diagonal_gcd(), nat(2));
    }

    #[test]
    fn orders_are_even() {
        for g in [
            GroupId::Alt(7),
            GroupId::Sporadic("Ly".into()),
            GroupId::A { n: 3, q: 9 },
            GroupId::TwoG2(27),
            GroupId::E8(3),
        ] {
            assert_eq!(ord(g) % nat(2), nat(0));
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(97), Some((97, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
