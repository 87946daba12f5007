//! Boolean functions on GF(2^m) as truth tables.
//!
//! The Walsh transform uses the trace inner product,
//! `W_f(a) = sum_x (-1)^(f(x) + Tr(a x))`. Internally the fast transform runs
//! under the coordinate dot product and the result is reindexed: since
//! `Tr(a x) = <tau(a), x>` with `tau(a)_i = Tr(a x^i)`, the trace-form value
//! at `a` is the dot-form value at `tau(a)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::bits::BitVec;
use crate::error::{domain, Error, Result};
use crate::gf2m::FieldSpec;

/// Walsh values indexed by field element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, a: u32) -> i64 {
        self.values[a as usize]
    }

    pub fn max_abs(&self) -> i64 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Value -> number of elements carrying it.
    pub fn value_counts(&self) -> BTreeMap<i64, usize> {
        let mut counts = BTreeMap::new();
        for &v in &self.values {
            *counts.entry(v).or_insert(0) += 1;
        }
        counts
    }

    pub fn count(&self, value: i64) -> usize {
        self.values.iter().filter(|&&v| v == value).count()
    }

    pub fn square_sum(&self) -> i128 {
        self.values.iter().map(|&v| (v as i128) * (v as i128)).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.values).expect("integer arrays always serialize")
    }
}

/// In-place Walsh-Hadamard butterfly on a +-1 (or any integer) vector.
pub(crate) fn fwht(values: &mut [i64]) {
    let n = values.len();
    let mut h = 1;
    while h < n {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// The zero set `T = {a : W_f(a) = 0}` and, when `T` is a hyperplane, its
/// normal under the trace pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroWalshSet {
    pub elements: Vec<u32>,
    pub is_subspace: bool,
    pub dimension: Option<u32>,
    pub hyperplane_normal: Option<u32>,
}

/// A Boolean function `GF(2^m) -> GF(2)`, stored as a truth table indexed by
/// element encoding. The Walsh spectrum is computed on first use and cached.
pub struct BooleanFunction {
    field: FieldSpec,
    table: BitVec,
    walsh: OnceLock<WalshSpectrum>,
}

impl Clone for BooleanFunction {
    fn clone(&self) -> Self {
        Self {
            field: self.field,
            table: self.table.clone(),
            walsh: self.walsh.clone(),
        }
    }
}

impl PartialEq for BooleanFunction {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.table == other.table
    }
}

impl Eq for BooleanFunction {}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BooleanFunction")
            .field("field", &self.field)
            .field("weight", &self.weight())
            .finish()
    }
}

impl BooleanFunction {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_table(field, BitVec::zeros(field.size())).unwrap()
    }

    pub fn from_fn(field: FieldSpec, mut f: impl FnMut(u32) -> bool) -> Self {
        let table = BitVec::from_fn(field.size(), |x| f(x as u32));
        Self::from_table(field, table).unwrap()
    }

    pub fn from_table(field: FieldSpec, table: BitVec) -> Result<Self> {
        if table.len() != field.size() {
            return domain(format!(
                "truth table has {} entries, expected {}",
                table.len(),
                field.size()
            ));
        }
        Ok(Self {
            field,
            table,
            walsh: OnceLock::new(),
        })
    }

    /// `x -> Tr(a x)`.
    pub fn linear(field: FieldSpec, a: u32) -> Self {
        let dual = field.trace_dual(a);
        Self::from_fn(field, |x| (dual & x).count_ones() & 1 == 1)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_vars(&self) -> u32 {
        self.field.degree()
    }

    pub fn table(&self) -> &BitVec {
        &self.table
    }

    #[inline]
    pub fn eval(&self, x: u32) -> bool {
        self.table.get(x as usize)
    }

    #[inline]
    pub fn eval_bit(&self, x: u32) -> u32 {
        self.table.get(x as usize) as u32
    }

    pub fn weight(&self) -> usize {
        self.table.count_ones()
    }

    /// Support in ascending element order.
    pub fn support(&self) -> Vec<u32> {
        self.field.elements().filter(|&x| self.eval(x)).collect()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.weight() == self.field.size()
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return domain("functions are defined over different fields");
        }
        let mut table = self.table.clone();
        table.xor_assign(&other.table);
        Self::from_table(self.field, table)
    }

    /// `f(x) + Tr(a x) + c`.
    pub fn affine_shift(&self, a: u32, c: bool) -> Result<Self> {
        self.field.check(a)?;
        let dual = self.field.trace_dual(a);
        Ok(Self::from_fn(self.field, |x| {
            self.eval(x) ^ ((dual & x).count_ones() & 1 == 1) ^ c
        }))
    }

    /// Full Walsh spectrum, computed in `O(m 2^m)` and cached.
    pub fn walsh_full(&self) -> &WalshSpectrum {
        self.walsh.get_or_init(|| {
            let mut dot: Vec<i64> = (0..self.field.size())
                .map(|x| if self.table.get(x) { -1 } else { 1 })
                .collect();
            fwht(&mut dot);
            let tau = self.field.trace_dual_table();
            WalshSpectrum {
                values: tau.iter().map(|&t| dot[t as usize]).collect(),
            }
        })
    }

    /// `W_f(a)` by direct summation, `O(2^m)`.
    pub fn walsh_at(&self, a: u32) -> i64 {
        let dual = self.field.trace_dual(a);
        self.field
            .elements()
            .map(|x| {
                if self.eval_bit(x) ^ (dual & x).count_ones() & 1 == 0 {
                    1
                } else {
                    -1
                }
            })
            .sum()
    }

    pub fn nonlinearity(&self) -> u64 {
        let half = (self.field.size() / 2) as i64;
        (half - self.walsh_full().max_abs() / 2) as u64
    }

    pub fn is_bent(&self) -> Result<bool> {
        let m = self.num_vars();
        if !m.is_multiple_of(2) {
            return domain(format!("bentness needs an even number of variables, got {m}"));
        }
        let target = 1i64 << (m / 2);
        Ok(self.walsh_full().values().iter().all(|v| v.abs() == target))
    }

    pub fn is_semibent(&self) -> Result<bool> {
        let m = self.num_vars();
        if m.is_multiple_of(2) {
            return domain(format!("semi-bentness needs an odd number of variables, got {m}"));
        }
        let peak = 1i64 << m.div_ceil(2);
        Ok(self
            .walsh_full()
            .values()
            .iter()
            .all(|&v| v == 0 || v.abs() == peak))
    }

    /// Algebraic normal form over the polynomial-basis coordinates: bit `u`
    /// of the result is the coefficient of the monomial `prod_{i in u} x_i`.
    pub fn anf(&self) -> BitVec {
        moebius(&self.table, self.num_vars())
    }

    /// Inverse of [`anf`](Self::anf); the Moebius transform is an involution.
    pub fn from_anf(field: FieldSpec, coefficients: &BitVec) -> Result<Self> {
        if coefficients.len() != field.size() {
            return domain("ANF length does not match the field size");
        }
        Self::from_table(field, moebius(coefficients, field.degree()))
    }

    /// Largest monomial degree in the ANF; the zero function has degree 0.
    pub fn algebraic_degree(&self) -> u32 {
        let anf = self.anf();
        (0..self.field.size())
            .filter(|&u| anf.get(u))
            .map(|u| u.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// `sum_x (-1)^(f(x) + f(x + b))`.
    pub fn autocorrelation(&self, b: u32) -> i64 {
        self.field
            .elements()
            .map(|x| if self.eval(x) == self.eval(x ^ b) { 1 } else { -1 })
            .sum()
    }

    pub fn zero_walsh_set(&self) -> ZeroWalshSet {
        let spectrum = self.walsh_full();
        let elements: Vec<u32> = self.field.elements().filter(|&a| spectrum.at(a) == 0).collect();
        let basis = xor_basis(&elements);
        let dim = basis.len() as u32;
        let is_subspace = !elements.is_empty() && elements[0] == 0 && elements.len() == 1 << dim;
        let hyperplane_normal = if is_subspace && dim + 1 == self.num_vars() {
            self.field.hyperplane_normal(&basis).ok()
        } else {
            None
        };
        ZeroWalshSet {
            elements,
            is_subspace,
            dimension: is_subspace.then_some(dim),
            hyperplane_normal,
        }
    }

    /// Truth table as hex, two characters per byte; bit `x` of the table is
    /// bit `x % 8` of byte `x / 8`.
    pub fn to_hex(&self) -> String {
        let bytes = self.field.size().div_ceil(8);
        let mut out = String::with_capacity(2 * bytes);
        for byte in 0..bytes {
            let mut v = 0u8;
            for bit in 0..8 {
                let x = byte * 8 + bit;
                if x < self.field.size() && self.table.get(x) {
                    v |= 1 << bit;
                }
            }
            out.push_str(&format!("{v:02x}"));
        }
        out
    }

    pub fn from_hex(field: FieldSpec, hex: &str) -> Result<Self> {
        let hex = hex.trim();
        let bytes = field.size().div_ceil(8);
        if hex.len() != 2 * bytes {
            return Err(Error::Parse(format!(
                "hex truth table for m = {} needs {} characters, got {}",
                field.degree(),
                2 * bytes,
                hex.len()
            )));
        }
        let mut table = BitVec::zeros(field.size());
        for byte in 0..bytes {
            let v = u8::from_str_radix(&hex[2 * byte..2 * byte + 2], 16)
                .map_err(|_| Error::Parse(format!("bad hex digits at byte {byte}")))?;
            for bit in 0..8 {
                let x = byte * 8 + bit;
                if v >> bit & 1 == 1 {
                    if x >= field.size() {
                        return Err(Error::Parse("hex truth table has bits past 2^m".into()));
                    }
                    table.set(x, true);
                }
            }
        }
        Self::from_table(field, table)
    }
}

fn moebius(input: &BitVec, m: u32) -> BitVec {
    let mut t = input.clone();
    let n = 1usize << m;
    for i in 0..m {
        let step = 1usize << i;
        for x in 0..n {
            if x & step != 0 && t.get(x ^ step) {
                let v = t.get(x);
                t.set(x, !v);
            }
        }
    }
    t
}

/// A basis (reduced, descending leading bits) of the span of `elements`.
pub(crate) fn xor_basis(elements: &[u32]) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for &e in elements {
        let mut r = e;
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}
