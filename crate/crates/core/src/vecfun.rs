//! Vectorial Boolean functions `GF(2^m) -> GF(2^s)` and the named
//! constructions used to build codes: power functions (Gold, Kasami, Welch,
//! Niho) and the Maiorana-McFarland product.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolfun::{fwht, BooleanFunction};
use crate::error::{domain, Error, Result};
use crate::gf2m::{self, FieldSpec};

/// Largest `2^(m+s)` for which all component spectra are tabulated at once.
pub const SPECTRA_LIMIT_LOG2: u32 = 26;

/// Walsh values `W_F(y, x)` of every component, `y` over the output field and
/// `x` over the input field, with `W_F(0, x) = 2^m [x = 0]`.
#[derive(Clone, Debug)]
pub struct ComponentSpectra {
    input_degree: u32,
    values: Vec<i32>,
}

impl ComponentSpectra {
    #[inline]
    pub fn get(&self, y: u32, x: u32) -> i64 {
        self.values[((y as usize) << self.input_degree) | x as usize] as i64
    }

    /// Row for the component `y`.
    pub fn row(&self, y: u32) -> &[i32] {
        let n = 1usize << self.input_degree;
        &self.values[(y as usize) * n..(y as usize + 1) * n]
    }
}

/// A function `F: GF(2^m) -> GF(2^s)` given by its value table.
pub struct VectorialFunction {
    input: FieldSpec,
    output: FieldSpec,
    table: Vec<u32>,
    spectra: OnceLock<ComponentSpectra>,
}

impl Clone for VectorialFunction {
    fn clone(&self) -> Self {
        Self {
            input: self.input,
            output: self.output,
            table: self.table.clone(),
            spectra: self.spectra.clone(),
        }
    }
}

impl PartialEq for VectorialFunction {
    fn eq(&self, other: &Self) -> bool {
        self.input == other.input && self.output == other.output && self.table == other.table
    }
}

impl Eq for VectorialFunction {}

impl fmt::Debug for VectorialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorialFunction")
            .field("input", &self.input)
            .field("output", &self.output)
            .finish_non_exhaustive()
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    m: u32,
    s: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    input_modulus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output_modulus: Option<String>,
    table: Vec<u32>,
}

impl VectorialFunction {
    pub fn new(input: FieldSpec, output: FieldSpec, table: Vec<u32>) -> Result<Self> {
        if table.len() != input.size() {
            return domain(format!(
                "value table has {} entries, expected 2^{} = {}",
                table.len(),
                input.degree(),
                input.size()
            ));
        }
        if let Some(&bad) = table.iter().find(|&&v| !output.contains(v)) {
            output.check(bad)?;
        }
        Ok(Self {
            input,
            output,
            table,
            spectra: OnceLock::new(),
        })
    }

    pub fn from_fn(input: FieldSpec, output: FieldSpec, f: impl Fn(u32) -> u32) -> Result<Self> {
        Self::new(input, output, input.elements().map(f).collect())
    }

    /// Number of input bits `m`.
    pub fn m(&self) -> u32 {
        self.input.degree()
    }

    /// Number of output bits `s`.
    pub fn s(&self) -> u32 {
        self.output.degree()
    }

    pub fn input_field(&self) -> FieldSpec {
        self.input
    }

    pub fn output_field(&self) -> FieldSpec {
        self.output
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn is_bijective(&self) -> bool {
        if self.m() != self.s() {
            return false;
        }
        let mut seen = vec![false; self.output.size()];
        self.table
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    /// The component `f_lambda(x) = Tr_1^s(lambda F(x))`.
    pub fn component(&self, lambda: u32) -> Result<BooleanFunction> {
        self.output.check(lambda)?;
        if lambda == 0 {
            return domain("component functions need a nonzero lambda");
        }
        let dual = self.output.trace_dual(lambda);
        Ok(BooleanFunction::from_fn(self.input, |x| {
            (dual & self.eval(x)).count_ones() & 1 == 1
        }))
    }

    /// Walsh values of every component, computed once and cached.
    pub fn spectra(&self) -> Result<&ComponentSpectra> {
        if let Some(s) = self.spectra.get() {
            return Ok(s);
        }
        let log2 = self.m() + self.s();
        if log2 > SPECTRA_LIMIT_LOG2 {
            return Err(Error::Capacity {
                dimension: log2 as usize,
                limit: SPECTRA_LIMIT_LOG2 as usize,
            });
        }
        Ok(self.spectra.get_or_init(|| self.compute_spectra()))
    }

    fn compute_spectra(&self) -> ComponentSpectra {
        let n = self.input.size();
        let tau_in = self.input.trace_dual_table();
        let rows: Vec<Vec<i32>> = (0..self.output.size() as u32)
            .into_par_iter()
            .map(|y| {
                if y == 0 {
                    let mut row = vec![0i32; n];
                    row[0] = n as i32;
                    return row;
                }
                let dual = self.output.trace_dual(y);
                let mut dot: Vec<i64> = self
                    .table
                    .iter()
                    .map(|&v| if (dual & v).count_ones() & 1 == 1 { -1 } else { 1 })
                    .collect();
                fwht(&mut dot);
                tau_in.iter().map(|&t| dot[t as usize] as i32).collect()
            })
            .collect();
        ComponentSpectra {
            input_degree: self.m(),
            values: rows.concat(),
        }
    }

    /// `W_F(y, x) = sum_d (-1)^(Tr_1^s(y F(d)) + Tr_1^m(x d))`.
    pub fn walsh(&self, y: u32, x: u32) -> Result<i64> {
        Ok(self.spectra()?.get(y, x))
    }

    /// Multiset of `|W_F(lambda, x)|` over `lambda != 0` and all `x`, as value -> count.
    pub fn extended_walsh_spectrum(&self) -> Result<BTreeMap<u64, usize>> {
        let spectra = self.spectra()?;
        let mut counts = BTreeMap::new();
        for y in 1..self.output.size() as u32 {
            for &v in spectra.row(y) {
                *counts.entry(v.unsigned_abs() as u64).or_insert(0) += 1;
            }
        }
        Ok(counts)
    }

    pub fn nonlinearity(&self) -> Result<u64> {
        let max = self
            .extended_walsh_spectrum()?
            .keys()
            .next_back()
            .copied()
            .unwrap_or(0);
        Ok((self.input.size() as u64) / 2 - max / 2)
    }

    /// Every component semi-bent; needs `m = s` odd.
    pub fn is_almost_bent(&self) -> Result<bool> {
        let m = self.m();
        if m != self.s() || m.is_multiple_of(2) {
            return domain(format!(
                "almost bentness is defined for m = s odd, got m = {m}, s = {}",
                self.s()
            ));
        }
        let peak = 1u64 << m.div_ceil(2);
        Ok(self
            .extended_walsh_spectrum()?
            .keys()
            .all(|&v| v == 0 || v == peak))
    }

    /// Every derivative `F(x) + F(x + a)`, `a != 0`, takes each output value
    /// exactly `2^(m-s)` times.
    pub fn is_perfect_nonlinear(&self) -> bool {
        if self.s() > self.m() {
            return false;
        }
        let target = 1u32 << (self.m() - self.s());
        (1..self.input.size() as u32).into_par_iter().all(|a| {
            let mut counts = vec![0u32; self.output.size()];
            for x in self.input.elements() {
                counts[(self.eval(x) ^ self.eval(x ^ a)) as usize] += 1;
            }
            counts.iter().all(|&c| c == target)
        })
    }

    /// Every component bent (false for odd `m`).
    pub fn all_components_bent(&self) -> Result<bool> {
        let m = self.m();
        if m % 2 == 1 {
            return Ok(false);
        }
        let target = 1i32 << (m / 2);
        let spectra = self.spectra()?;
        Ok((1..self.output.size() as u32).all(|y| spectra.row(y).iter().all(|v| v.abs() == target)))
    }

    /// Selector `f_lambda(x) + Tr_1^m(a x) + c` whose support gives the code.
    pub fn with_affine_offset(&self, lambda: u32, a: u32, c: bool) -> Result<BooleanFunction> {
        self.component(lambda)?.affine_shift(a, c)
    }

    /// `F'(x) = F(x) + (Tr_1^m(a x) + c) v`. When `Tr_1^s(lambda v) = 1` its
    /// `lambda` component is the selector `f_lambda + Tr(a x) + c`, and every
    /// component `y` with `Tr_1^s(y v) = 0` coincides with that of `F`.
    pub fn offset_function(&self, a: u32, c: bool, v: u32) -> Result<Self> {
        self.input.check(a)?;
        self.output.check(v)?;
        if a == 0 && !c {
            return Ok(self.clone());
        }
        let dual = self.input.trace_dual(a);
        Self::from_fn(self.input, self.output, |x| {
            let bit = ((dual & x).count_ones() & 1 == 1) ^ c;
            self.eval(x) ^ if bit { v } else { 0 }
        })
    }

    pub fn to_json(&self) -> String {
        let doc = TableJson {
            m: self.m(),
            s: self.s(),
            input_modulus: Some(format!("{:#x}", self.input.modulus())),
            output_modulus: Some(format!("{:#x}", self.output.modulus())),
            table: self.table.clone(),
        };
        serde_json::to_string(&doc).expect("tables always serialize")
    }

    /// Accepts `{"m", "s", "table"}` with optional `input_modulus` and
    /// `output_modulus`; absent moduli fall back to the defaults.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableJson = serde_json::from_str(text)?;
        let field = |deg: u32, modulus: &Option<String>| match modulus {
            Some(s) => FieldSpec::new(deg, gf2m::parse_modulus(s)?),
            None => FieldSpec::with_default_modulus(deg),
        };
        let input = field(doc.m, &doc.input_modulus)?;
        let output = field(doc.s, &doc.output_modulus)?;
        Self::new(input, output, doc.table)
    }

    /// Values as fixed-width hex words, `ceil(s/4)` digits each, in input order.
    pub fn to_hex(&self) -> String {
        let width = self.s().div_ceil(4) as usize;
        self.table
            .iter()
            .map(|v| format!("{v:0width$x}"))
            .collect()
    }

    pub fn from_hex(input: FieldSpec, output: FieldSpec, hex: &str) -> Result<Self> {
        let hex: String = hex.chars().filter(|c| !c.is_whitespace()).collect();
        let width = output.degree().div_ceil(4) as usize;
        if hex.len() != width * input.size() || !hex.is_ascii() {
            return Err(Error::Parse(format!(
                "hex table needs {} digits, got {}",
                width * input.size(),
                hex.len()
            )));
        }
        let table = (0..input.size())
            .map(|i| {
                u32::from_str_radix(&hex[i * width..(i + 1) * width], 16)
                    .map_err(|_| Error::Parse(format!("bad hex word at index {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(input, output, table)
    }
}

/// `x -> x^d` on a given field; `0 < d < 2^m - 1`.
pub fn power_function_in(field: FieldSpec, d: u64) -> Result<VectorialFunction> {
    if d == 0 || d >= field.group_order() {
        return domain(format!(
            "power exponent {d} must lie in 1..{}",
            field.group_order()
        ));
    }
    VectorialFunction::from_fn(field, field, |x| field.pow(x, d))
}

pub fn power_function(m: u32, d: u64) -> Result<VectorialFunction> {
    power_function_in(FieldSpec::with_default_modulus(m)?, d)
}

pub fn identity(m: u32) -> Result<VectorialFunction> {
    let k = FieldSpec::with_default_modulus(m)?;
    VectorialFunction::from_fn(k, k, |x| x)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `d` modulo `n`, if it exists.
pub fn mod_inverse(d: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (d % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

/// `lambda^(-1/d)`: the unique `w` with `w^d = lambda^(-1)`, for
/// `gcd(d, 2^m - 1) = 1`.
pub fn inverse_root(field: FieldSpec, lambda: u32, d: u64) -> Result<u32> {
    let d_inv = mod_inverse(d, field.group_order())
        .ok_or_else(|| Error::Domain(format!("exponent {d} is not invertible mod 2^m - 1")))?;
    Ok(field.pow(field.inverse(lambda)?, d_inv))
}

fn odd_degree(m: u32, name: &str) -> Result<()> {
    if m.is_multiple_of(2) {
        return domain(format!("{name} functions here need odd m, got {m}"));
    }
    Ok(())
}

/// Reduce `d` into `1..=2^m-1` without changing `x^d` on the field.
fn reduce_exponent(d: u64, m: u32) -> u64 {
    let order = (1u64 << m) - 1;
    match d % order {
        0 => order,
        r => r,
    }
}

fn coprime_index(m: u32, i: u32, name: &str) -> Result<()> {
    if i == 0 || i >= m || gcd(i as u64, m as u64) != 1 {
        return domain(format!("{name} index i = {i} needs 0 < i < m and gcd(i, m) = 1 (m = {m})"));
    }
    Ok(())
}

pub fn gold_exponent(m: u32, i: u32) -> Result<u64> {
    odd_degree(m, "Gold")?;
    coprime_index(m, i, "Gold")?;
    Ok(reduce_exponent((1u64 << i) + 1, m))
}

pub fn kasami_exponent(m: u32, i: u32) -> Result<u64> {
    odd_degree(m, "Kasami")?;
    coprime_index(m, i, "Kasami")?;
    Ok(reduce_exponent((1u64 << (2 * i)) - (1u64 << i) + 1, m))
}

pub fn welch_exponent(m: u32) -> Result<u64> {
    odd_degree(m, "Welch")?;
    Ok(reduce_exponent((1u64 << ((m - 1) / 2)) + 3, m))
}

/// `2^((m-1)/2) + 2^((m-1)/4) - 1` for `m = 1 mod 4`, and
/// `2^((m-1)/2) + 2^((3m-1)/4) - 1` for `m = 3 mod 4`.
pub fn niho_exponent(m: u32) -> Result<u64> {
    odd_degree(m, "Niho")?;
    let d = if m % 4 == 1 {
        (1u64 << ((m - 1) / 2)) + (1u64 << ((m - 1) / 4)) - 1
    } else {
        (1u64 << ((m - 1) / 2)) + (1u64 << ((3 * m - 1) / 4)) - 1
    };
    Ok(reduce_exponent(d, m))
}

pub fn gold(m: u32, i: u32) -> Result<VectorialFunction> {
    power_function(m, gold_exponent(m, i)?)
}

pub fn kasami(m: u32, i: u32) -> Result<VectorialFunction> {
    power_function(m, kasami_exponent(m, i)?)
}

pub fn welch(m: u32) -> Result<VectorialFunction> {
    power_function(m, welch_exponent(m)?)
}

pub fn niho(m: u32) -> Result<VectorialFunction> {
    power_function(m, niho_exponent(m)?)
}

/// `F(x, y) = x y` on `GF(2^half)^2`, a `(2 half, half)` bent function.
/// The pair is packed as the input element `x 2^half + y`.
pub fn mm_product(half: u32) -> Result<VectorialFunction> {
    let small = FieldSpec::with_default_modulus(half)?;
    let mut id = Vec::with_capacity(small.size());
    id.extend(small.elements());
    let zero = vec![0; small.size()];
    mm_general(half, &id, &id, &zero)
}

/// `F(x, y) = L(x pi(y)) + H(y)` with `L` affine and bijective, `pi` a
/// permutation and `H` arbitrary, all given as tables over `GF(2^half)`.
pub fn mm_general(half: u32, l: &[u32], pi: &[u32], h: &[u32]) -> Result<VectorialFunction> {
    if half < 2 || 2 * half > gf2m::MAX_DEGREE {
        return domain(format!("half degree {half} must lie in 2..=10"));
    }
    let small = FieldSpec::with_default_modulus(half)?;
    let big = FieldSpec::with_default_modulus(2 * half)?;
    let n = small.size();
    if l.len() != n || pi.len() != n || h.len() != n {
        return domain("L, pi and H tables must each have 2^half entries");
    }
    for t in [l, pi, h] {
        for &v in t {
            small.check(v)?;
        }
    }
    if !is_permutation(pi) {
        return domain("pi must be a permutation");
    }
    if !is_permutation(l) || !is_affine(small, l) {
        return domain("L must be an affine bijection");
    }
    let mask = (n - 1) as u32;
    VectorialFunction::from_fn(big, small, |v| {
        let (x, y) = (v >> half, v & mask);
        l[small.mul(x, pi[y as usize]) as usize] ^ h[y as usize]
    })
}

fn is_permutation(t: &[u32]) -> bool {
    let mut seen = vec![false; t.len()];
    t.iter().all(|&v| {
        (v as usize) < t.len() && !std::mem::replace(&mut seen[v as usize], true)
    })
}

fn is_affine(k: FieldSpec, t: &[u32]) -> bool {
    k.elements()
        .all(|a| k.elements().all(|b| t[(a ^ b) as usize] ^ t[0] == t[a as usize] ^ t[b as usize]))
}

/// Build a function from a descriptor such as `gold:5:1`, `kasami:7:2`,
/// `welch:7`, `niho:9`, `power:9:19`, `mm:4` or `id:6`.
pub fn parse_descriptor(desc: &str) -> Result<VectorialFunction> {
    let parts: Vec<&str> = desc.trim().split(':').collect();
    let num = |i: usize| -> Result<u64> {
        parts
            .get(i)
            .ok_or_else(|| Error::Parse(format!("descriptor {desc:?} is missing field {i}")))?
            .parse()
            .map_err(|_| Error::Parse(format!("descriptor {desc:?}: field {i} is not a number")))
    };
    let arity = |n: usize| -> Result<()> {
        if parts.len() != n {
            return Err(Error::Parse(format!(
                "descriptor {desc:?} should have {} fields",
                n
            )));
        }
        Ok(())
    };
    let m32 = |i: usize| -> Result<u32> {
        u32::try_from(num(i)?).map_err(|_| Error::Parse(format!("{desc:?}: value too large")))
    };
    match parts[0] {
        "gold" => {
            arity(3)?;
            gold(m32(1)?, m32(2)?)
        }
        "kasami" => {
            arity(3)?;
            kasami(m32(1)?, m32(2)?)
        }
        "welch" => {
            arity(2)?;
            welch(m32(1)?)
        }
        "niho" => {
            arity(2)?;
            niho(m32(1)?)
        }
        "power" => {
            arity(3)?;
            power_function(m32(1)?, num(2)?)
        }
        "mm" => {
            arity(2)?;
            mm_product(m32(1)?)
        }
        "id" => {
            arity(2)?;
            identity(m32(1)?)
        }
        other => Err(Error::Parse(format!("unknown function family {other:?}"))),
    }
}
