//! Arithmetic in GF(2^m), 2 <= m <= 20, in a polynomial basis.
//!
//! An element is a `u32` whose bit `i` is the coefficient of `x^i`; the
//! field is fixed by a primitive modulus, so `x` (the element `2`) generates
//! the multiplicative group. Addition is XOR.

use std::fmt;

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 20;

/// Default primitive moduli, indexed by `m - 2`. Degrees 5, 7 and 9 use the
/// polynomials `x^5+x^2+1`, `x^7+x+1` and `x^9+x^4+1`; every entry is the
/// numerically smallest primitive polynomial of its degree.
const DEFAULT_MODULI: [u32; 19] = [
    0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x402b, 0x8003,
    0x1002d, 0x20009, 0x40027, 0x80027, 0x100009,
];

pub fn default_modulus(m: u32) -> Result<u32> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
        return Err(Error::DegreeOutOfRange(m));
    }
    Ok(DEFAULT_MODULI[(m - MIN_DEGREE) as usize])
}

/// A binary field GF(2^m) fixed by a primitive modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    degree: u32,
    modulus: u32,
    /// Bit `i` holds `Tr(x^i)`; the absolute trace is the parity of `a & trace_mask`.
    trace_mask: u32,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.degree, poly_string(self.modulus))
    }
}

impl FieldSpec {
    /// Field with a caller-chosen modulus, which must be primitive of degree `m`.
    pub fn new(m: u32, modulus: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        if modulus >> m != 1 || !is_primitive(m, modulus) {
            return Err(Error::NotPrimitive {
                degree: m,
                modulus: modulus as u64,
            });
        }
        Ok(Self::new_unchecked(m, modulus))
    }

    pub fn with_default_modulus(m: u32) -> Result<Self> {
        Ok(Self::new_unchecked(m, default_modulus(m)?))
    }

    fn new_unchecked(m: u32, modulus: u32) -> Self {
        let mut spec = Self {
            degree: m,
            modulus,
            trace_mask: 0,
        };
        let mut mask = 0;
        let mut xi = 1;
        for i in 0..m {
            if spec.trace_by_squaring(xi) == 1 {
                mask |= 1 << i;
            }
            xi = spec.mul(xi, 2);
        }
        spec.trace_mask = mask;
        spec
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    #[inline]
    pub fn size(&self) -> usize {
        1 << self.degree
    }

    /// Order of the multiplicative group, `2^m - 1`.
    #[inline]
    pub fn group_order(&self) -> u64 {
        (1u64 << self.degree) - 1
    }

    #[inline]
    pub fn contains(&self, a: u32) -> bool {
        a >> self.degree == 0
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange {
                value: a as u64,
                degree: self.degree,
            })
        }
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..(1u32 << self.degree)
    }

    /// The generator `x`, written `a` (or alpha) in element strings.
    #[inline]
    pub fn generator(&self) -> u32 {
        2
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(self.contains(a) && self.contains(b));
        let top = 1u32 << self.degree;
        let (mut a, mut b, mut r) = (a, b, 0u32);
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        r
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut result = 1;
        let mut base = a;
        let mut e = e;
        while e != 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        result
    }

    /// `x^k` for the generator `x`; `k` is reduced mod `2^m - 1`.
    pub fn alpha_pow(&self, k: u64) -> u32 {
        self.pow(2, k % self.group_order())
    }

    pub fn inverse(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    /// `a^(2^m - 2)`, which maps 0 to 0 and every other element to its inverse.
    pub fn inverse_or_zero(&self, a: u32) -> u32 {
        self.pow(a, self.group_order() - 1)
    }

    /// `a / b`, with `a / 0` taken as 0.
    pub fn div_or_zero(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inverse_or_zero(b))
    }

    /// Absolute trace `Tr_1^m(a)`, as 0 or 1.
    #[inline]
    pub fn abs_trace(&self, a: u32) -> u32 {
        (a & self.trace_mask).count_ones() & 1
    }

    fn trace_by_squaring(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut t = a;
        for _ in 0..self.degree {
            acc ^= t;
            t = self.square(t);
        }
        acc
    }

    /// Relative trace `Tr_t^m(a) = sum_{i < m/t} a^(2^(t i))`, an element of the
    /// subfield GF(2^t).
    pub fn trace(&self, a: u32, t: u32) -> Result<u32> {
        if t == 0 || !self.degree.is_multiple_of(t) {
            return Err(Error::Domain(format!(
                "trace degree {t} does not divide field degree {}",
                self.degree
            )));
        }
        let mut acc = 0;
        let mut term = a;
        for _ in 0..self.degree / t {
            acc ^= term;
            for _ in 0..t {
                term = self.square(term);
            }
        }
        Ok(acc)
    }

    /// Bit `i` of the result is `Tr(a * x^i)`, so that
    /// `Tr(a * b) = parity(trace_dual(a) & b)`.
    pub fn trace_dual(&self, a: u32) -> u32 {
        let mut out = 0;
        let mut t = a;
        for i in 0..self.degree {
            out |= self.abs_trace(t) << i;
            t = self.mul(t, 2);
        }
        out
    }

    /// `trace_dual` for every element, indexed by element.
    pub fn trace_dual_table(&self) -> Vec<u32> {
        let basis: Vec<u32> = (0..self.degree).map(|j| self.trace_dual(1 << j)).collect();
        let mut table = vec![0u32; self.size()];
        for a in 1..self.size() {
            let low = a.trailing_zeros() as usize;
            table[a] = table[a & (a - 1)] ^ basis[low];
        }
        table
    }

    /// Trace inner product `Tr(a * b)` as 0/1.
    #[inline]
    pub fn trace_product(&self, a: u32, b: u32) -> u32 {
        self.abs_trace(self.mul(a, b))
    }

    /// Basis of the hyperplane `{y : Tr(u y) = 0}` for `u != 0`.
    pub fn hyperplane_basis(&self, normal: u32) -> Result<Vec<u32>> {
        if normal == 0 || !self.contains(normal) {
            return Err(Error::Domain("hyperplane normal must be a nonzero element".into()));
        }
        let dual = self.trace_dual(normal);
        // The functional y -> parity(dual & y) is nonzero; pivot on its lowest bit.
        let pivot = dual.trailing_zeros();
        Ok((0..self.degree)
            .filter(|&j| j != pivot)
            .map(|j| {
                let e = 1u32 << j;
                if (dual >> j) & 1 == 1 {
                    e | (1 << pivot)
                } else {
                    e
                }
            })
            .collect())
    }

    /// The nonzero `u` with `Tr(u h) = 0` for every `h` in the span of `basis`,
    /// which must span a hyperplane (`m - 1` independent elements).
    pub fn hyperplane_normal(&self, basis: &[u32]) -> Result<u32> {
        let mut reduced: Vec<u32> = Vec::new();
        for &b in basis {
            self.check(b)?;
            let mut r = b;
            for &p in &reduced {
                r = r.min(r ^ p);
            }
            if r != 0 {
                reduced.push(r);
                reduced.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        if reduced.len() != self.degree as usize - 1 {
            return Err(Error::Domain(format!(
                "basis spans a subspace of dimension {}, expected {}",
                reduced.len(),
                self.degree - 1
            )));
        }
        let normal = (1..self.size() as u32)
            .find(|&u| basis.iter().all(|&h| self.trace_product(u, h) == 0))
            .expect("a hyperplane has a nonzero orthogonal element");
        Ok(normal)
    }

    /// Human-readable modulus, e.g. `x^5+x^2+1`.
    pub fn modulus_string(&self) -> String {
        poly_string(self.modulus)
    }

    /// Parse an element written as a decimal or `0x` hex integer, or as a
    /// power `a^k` (also `alpha^k`, `x^k`) of the generator.
    pub fn parse_element(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        for prefix in ["alpha^", "a^", "x^"] {
            if let Some(exp) = s.strip_prefix(prefix) {
                let k: u64 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in element {s:?}")))?;
                return Ok(self.alpha_pow(k));
            }
        }
        if s == "a" || s == "alpha" {
            return Ok(self.generator());
        }
        let value = parse_int(s)?;
        if value > u32::MAX as u64 {
            return Err(Error::ElementOutOfRange {
                value,
                degree: self.degree,
            });
        }
        self.check(value as u32)
    }

    /// `a^k` form of a nonzero element (discrete log by scanning), or `0`.
    pub fn element_string(&self, a: u32) -> String {
        if a == 0 {
            return "0".into();
        }
        let mut t = 1;
        for k in 0..self.group_order() {
            if t == a {
                return format!("a^{k}");
            }
            t = self.mul(t, 2);
        }
        unreachable!("primitive modulus generates every nonzero element")
    }
}

fn parse_int(s: &str) -> Result<u64> {
    let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else if let Some(bin) = s.strip_prefix("0b") {
        u64::from_str_radix(bin, 2)
    } else {
        s.parse()
    };
    parsed.map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Polynomial string for a `GF(2)[x]` bitmask, highest degree first.
pub fn poly_string(p: u32) -> String {
    if p == 0 {
        return "0".into();
    }
    let terms: Vec<String> = (0..32)
        .rev()
        .filter(|i| (p >> i) & 1 == 1)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    terms.join("+")
}

/// Parse a modulus given as hex/decimal/binary integer or as a polynomial
/// string like `x^5+x^2+1`.
pub fn parse_modulus(s: &str) -> Result<u32> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if !s.contains('x') || s.starts_with("0x") || s.starts_with("0X") {
        let v = parse_int(&s)?;
        return u32::try_from(v).map_err(|_| Error::Parse(format!("modulus too large: {s}")));
    }
    let mut p = 0u32;
    for term in s.split('+') {
        let exp = match term {
            "1" => 0,
            "x" => 1,
            t => t
                .strip_prefix("x^")
                .and_then(|e| e.parse::<u32>().ok())
                .filter(|&e| e < 32)
                .ok_or_else(|| Error::Parse(format!("bad polynomial term {t:?}")))?,
        };
        p ^= 1 << exp;
    }
    Ok(p)
}

/// Primitivity of a degree-`m` modulus: `x` has multiplicative order exactly
/// `2^m - 1` in `GF(2)[x]/(modulus)`. This implies irreducibility, since the
/// powers of `x` then exhaust all nonzero residues as units.
pub fn is_primitive(m: u32, modulus: u32) -> bool {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) || modulus >> m != 1 {
        return false;
    }
    let ring = FieldSpec {
        degree: m,
        modulus,
        trace_mask: 0,
    };
    let order = ring.group_order();
    if ring.pow(2, order) != 1 {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|p| ring.pow(2, order / p) != 1)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
