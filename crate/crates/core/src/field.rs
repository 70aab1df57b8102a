//! Exact arithmetic in F_q for prime powers q.
//!
//! Elements are integer codes `0..q`. For a prime field the code is the
//! residue mod p. For q = p^e with e >= 2 the code, written base p with
//! the constant term least significant, is the coefficient vector of a
//! polynomial of degree < e; arithmetic reduces modulo a fixed monic
//! irreducible polynomial. Code 0 is the additive identity and code 1
//! the multiplicative identity in every field.

use crate::error::Error;

/// Element code in `0..q`.
pub type FieldElem = u32;

/// Default cap on supported field orders. Everything in scope fits well
/// below it; raise via [`FieldSpec::with_order_limit`] if needed.
pub const DEFAULT_ORDER_LIMIT: u64 = 32;

/// Hard ceiling so that products of codes stay inside u64.
const ABSOLUTE_ORDER_LIMIT: u64 = 1 << 16;

/// A concrete finite field F_q, q = p^e.
///
/// Immutable after construction; shares freely across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic irreducible modulus of degree e, constant term first.
    /// Empty for prime fields (e = 1).
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Builds F_q, factoring q into p^e and picking the canonical modulus.
    /// Deterministic: equal q always yields an identical spec.
    pub fn new(q: u64) -> Result<FieldSpec, Error> {
        FieldSpec::with_order_limit(q, DEFAULT_ORDER_LIMIT)
    }

    pub fn with_order_limit(q: u64, limit: u64) -> Result<FieldSpec, Error> {
        let limit = limit.min(ABSOLUTE_ORDER_LIMIT);
        if q > limit {
            return Err(Error::OrderTooLarge { q, limit });
        }
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        // Smallest divisor > 1 of q is prime.
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut rest = q;
        let mut e = 0u32;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        let modulus = if e == 1 {
            Vec::new()
        } else {
            find_irreducible(p as u32, e)
        };
        Ok(FieldSpec {
            p: p as u32,
            e,
            q: q as u32,
            modulus,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        if self.e == 1 {
            (a + b) % self.p
        } else {
            let mut out = 0;
            let mut scale = 1;
            let (mut a, mut b) = (a, b);
            for _ in 0..self.e {
                out += (a % self.p + b % self.p) % self.p * scale;
                a /= self.p;
                b /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.check(a);
        if self.e == 1 {
            (self.p - a) % self.p
        } else {
            let mut out = 0;
            let mut scale = 1;
            let mut a = a;
            for _ in 0..self.e {
                out += (self.p - a % self.p) % self.p * scale;
                a /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        if self.e == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else {
            let prod = poly_mul(&self.digits(a), &self.digits(b), self.p);
            let rem = poly_rem(prod, &self.modulus, self.p);
            self.from_digits(&rem)
        }
    }

    /// Multiplicative inverse via a^(q-2); errors on zero.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, Error> {
        self.check(a);
        if a == 0 {
            return Err(Error::DivisionByZero { q: self.q });
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn pow(&self, a: FieldElem, mut exp: u64) -> FieldElem {
        let mut base = a;
        let mut out = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        out
    }

    /// Base-p digits of a code, constant term first, padded to length e.
    fn digits(&self, mut a: FieldElem) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u32]) -> FieldElem {
        let mut out = 0;
        for &c in d.iter().rev() {
            out = out * self.p + c;
        }
        out
    }

    #[inline]
    fn check(&self, a: FieldElem) {
        debug_assert!(a < self.q, "code {a} out of range for F_{}", self.q);
    }
}

/// The monic irreducible degree-e polynomial over F_p whose non-leading
/// coefficients, read as a base-p integer with the constant term least
/// significant, are minimal. Coefficients returned constant-first with
/// the leading 1 included.
pub fn find_irreducible(p: u32, e: u32) -> Vec<u32> {
    assert!(e >= 2, "prime fields need no modulus");
    let count = (p as u64).pow(e);
    for t in 0..count {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut rest = t;
        for _ in 0..e {
            coeffs.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        coeffs.push(1);
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn poly_deg(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    out
}

/// Remainder of a modulo a monic divisor m, coefficients mod p.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let md = poly_deg(m).expect("modulus must be nonzero");
    debug_assert_eq!(m[md], 1, "modulus must be monic");
    while let Some(d) = poly_deg(&a) {
        if d < md {
            break;
        }
        let c = a[d];
        let shift = d - md;
        for (k, &mc) in m.iter().enumerate().take(md + 1) {
            let sub = (c as u64 * mc as u64) % p as u64;
            a[shift + k] = ((a[shift + k] as u64 + p as u64 - sub) % p as u64) as u32;
        }
    }
    a
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
/// Exhaustive and obviously correct at the degrees in scope.
fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let d = match poly_deg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    for gd in 1..=d / 2 {
        let count = (p as u64).pow(gd as u32);
        for t in 0..count {
            let mut g = Vec::with_capacity(gd + 1);
            let mut rest = t;
            for _ in 0..gd {
                g.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            g.push(1);
            let rem = poly_rem(f.to_vec(), &g, p);
            if poly_deg(&rem).is_none() {
                return false;
            }
        }
    }
    true
}
