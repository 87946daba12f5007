//! Codes `C = {c_{x,y}}` with
//! `c_{x,y} = (Tr_1^m(x d) + Tr_1^s(y F(d)))_{d in D}` over the support `D` of
//! a selector component, either for all `y` (full code) or for `y` in a
//! hyperplane `H` of the output field (subcode).
//!
//! When the selector carries an affine offset `Tr(a x) + c`, the code is
//! built from `F'(x) = F(x) + (Tr(a x) + c) v` with `Tr_1^s(lambda v) = 1`, so
//! that the `lambda` component of `F'` is exactly the selector. For subcodes
//! `v` is the hyperplane normal, which leaves every component `y` in `H`
//! untouched.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{in_span, row_reduce, BitVec};
use crate::error::{domain, Error, Result};
use crate::vecfun::VectorialFunction;

/// Largest dimension enumerated codeword by codeword.
pub const ENUM_LIMIT: usize = 26;

/// Everything needed to build one code.
#[derive(Clone, Copy, Debug)]
pub struct CodeSpec<'a> {
    pub function: &'a VectorialFunction,
    pub lambda: u32,
    pub offset_a: u32,
    pub offset_c: bool,
    pub hyperplane_normal: Option<u32>,
}

impl<'a> CodeSpec<'a> {
    /// Full code for the component `lambda`, no offset.
    pub fn new(function: &'a VectorialFunction, lambda: u32) -> Self {
        Self {
            function,
            lambda,
            offset_a: 0,
            offset_c: false,
            hyperplane_normal: None,
        }
    }

    pub fn offset(mut self, a: u32, c: bool) -> Self {
        self.offset_a = a;
        self.offset_c = c;
        self
    }

    /// Restrict `y` to `H = {y : Tr_1^s(u y) = 0}`.
    pub fn subcode(mut self, normal: u32) -> Self {
        self.hyperplane_normal = Some(normal);
        self
    }

    /// Subcode with the default normal `lambda^(-1)`, which is valid only
    /// when `Tr_1^s(1) = 1`.
    pub fn subcode_default(self) -> Result<Self> {
        let out = self.function.output_field();
        if out.abs_trace(1) != 1 {
            return domain(format!(
                "Tr(1) = 0 in GF(2^{}); supply a hyperplane normal explicitly",
                out.degree()
            ));
        }
        let u = out.inverse(self.lambda)?;
        Ok(self.subcode(u))
    }

    pub fn is_subcode(&self) -> bool {
        self.hyperplane_normal.is_some()
    }

    pub fn validate(&self) -> Result<()> {
        let out = self.function.output_field();
        out.check(self.lambda)?;
        self.function.input_field().check(self.offset_a)?;
        if self.lambda == 0 {
            return domain("lambda must be nonzero");
        }
        if let Some(u) = self.hyperplane_normal {
            out.check(u)?;
            if u == 0 {
                return domain("hyperplane normal must be nonzero");
            }
            if out.trace_product(u, self.lambda) != 1 {
                return domain(format!(
                    "lambda = {} lies in the hyperplane with normal {u}: need Tr(u lambda) = 1",
                    self.lambda
                ));
            }
        }
        Ok(())
    }

    /// The vector `v` used by the offset device.
    pub fn offset_vector(&self) -> u32 {
        let out = self.function.output_field();
        match self.hyperplane_normal {
            Some(u) => u,
            None => out
                .elements()
                .find(|&v| out.trace_product(self.lambda, v) == 1)
                .expect("a nonzero lambda has a trace-dual partner"),
        }
    }

    /// The function whose `lambda` component is the selector.
    pub fn effective_function(&self) -> Result<VectorialFunction> {
        self.function
            .offset_function(self.offset_a, self.offset_c, self.offset_vector())
    }

    /// Dimension when the codeword map `(x, y) -> c_{x,y}` is injective.
    pub fn full_rank(&self) -> usize {
        let k = (self.function.m() + self.function.s()) as usize;
        if self.is_subcode() {
            k - 1
        } else {
            k
        }
    }

    pub fn header(&self) -> CodeHeader {
        let inp = self.function.input_field();
        let out = self.function.output_field();
        CodeHeader {
            m: inp.degree(),
            s: out.degree(),
            input_modulus: format!("{:#x} ({})", inp.modulus(), inp.modulus_string()),
            output_modulus: format!("{:#x} ({})", out.modulus(), out.modulus_string()),
            lambda: self.lambda,
            offset_a: self.offset_a,
            offset_c: self.offset_c as u8,
            hyperplane_normal: self.hyperplane_normal,
            offset_vector: (self.offset_a != 0 || self.offset_c).then(|| self.offset_vector()),
            function: None,
        }
    }
}

/// Reproducibility record attached to exported artifacts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeHeader {
    pub m: u32,
    pub s: u32,
    pub input_modulus: String,
    pub output_modulus: String,
    pub lambda: u32,
    pub offset_a: u32,
    pub offset_c: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplane_normal: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset_vector: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
}

impl fmt::Display for CodeHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.function {
            writeln!(f, "function: {name}")?;
        }
        writeln!(f, "m = {}, s = {}", self.m, self.s)?;
        writeln!(f, "input modulus: {}", self.input_modulus)?;
        writeln!(f, "output modulus: {}", self.output_modulus)?;
        write!(
            f,
            "lambda = {}, a = {}, c = {}",
            self.lambda, self.offset_a, self.offset_c
        )?;
        if let Some(u) = self.hyperplane_normal {
            write!(f, ", hyperplane normal = {u}")?;
        }
        if let Some(v) = self.offset_vector {
            write!(f, ", offset vector = {v}")?;
        }
        Ok(())
    }
}

/// A binary linear code given by row-reduced generators.
#[derive(Clone, Debug)]
pub struct LinearCode {
    length: usize,
    generators: Vec<BitVec>,
    support: Vec<u32>,
    full_rank: usize,
    header: Option<CodeHeader>,
}

impl LinearCode {
    /// Code spanned by arbitrary rows of equal length.
    pub fn from_rows(length: usize, rows: &[BitVec]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != length) {
            return domain("generator rows must all have the code length");
        }
        let generators = row_reduce(rows);
        Ok(Self {
            length,
            full_rank: generators.len(),
            generators,
            support: Vec::new(),
            header: None,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[BitVec] {
        &self.generators
    }

    /// The points `d_1 < d_2 < ...` indexing the coordinates.
    pub fn support(&self) -> &[u32] {
        &self.support
    }

    /// `m + s` for full codes and `m + s - 1` for subcodes.
    pub fn full_rank(&self) -> usize {
        self.full_rank
    }

    pub fn header(&self) -> Option<&CodeHeader> {
        self.header.as_ref()
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        if let Some(h) = &mut self.header {
            h.function = Some(label.into());
        }
    }

    /// One row per line of `0`/`1`, preceded by `#` header lines.
    pub fn generator_text(&self) -> String {
        let mut out = String::new();
        if let Some(h) = &self.header {
            for line in h.to_string().lines() {
                out.push_str("# ");
                out.push_str(line);
                out.push('\n');
            }
        }
        out.push_str(&format!("# [{}, {}]\n", self.length, self.dimension()));
        for row in &self.generators {
            out.push_str(&row.to_bit_string());
            out.push('\n');
        }
        out
    }

    pub fn generator_json(&self) -> serde_json::Value {
        serde_json::json!({
            "header": self.header,
            "length": self.length,
            "dimension": self.dimension(),
            "support": self.support,
            "rows": self.generators.iter().map(|r| r.to_bit_string()).collect::<Vec<_>>(),
        })
    }
}

/// Build the code described by `spec`. The dimension is the rank of the
/// generator rows and may fall short of `m + s` for degenerate functions.
pub fn build_code(spec: &CodeSpec) -> Result<LinearCode> {
    spec.validate()?;
    let f = spec.function;
    let inp = f.input_field();
    let out = f.output_field();
    let selector = f.with_affine_offset(spec.lambda, spec.offset_a, spec.offset_c)?;
    let support = selector.support();
    if support.is_empty() {
        return domain("the selector function has empty support");
    }
    let g = spec.effective_function()?;
    let n = support.len();
    let tau_in = inp.trace_dual_table();
    let mut rows = Vec::with_capacity((f.m() + f.s()) as usize);
    for i in 0..f.m() {
        rows.push(BitVec::from_fn(n, |j| tau_in[support[j] as usize] >> i & 1 == 1));
    }
    let output_basis: Vec<u32> = match spec.hyperplane_normal {
        None => (0..f.s()).map(|k| 1 << k).collect(),
        Some(u) => out.hyperplane_basis(u)?,
    };
    for b in output_basis {
        let dual = out.trace_dual(b);
        rows.push(BitVec::from_fn(n, |j| {
            (dual & g.eval(support[j])).count_ones() & 1 == 1
        }));
    }
    let generators = row_reduce(&rows);
    Ok(LinearCode {
        length: n,
        generators,
        support,
        full_rank: spec.full_rank(),
        header: Some(spec.header()),
    })
}

/// Exact weight distribution as an ordered map `w -> A_w`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WeightDistribution {
    entries: BTreeMap<u64, u64>,
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.enumerator_string())
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.enumerator_string())
    }
}

impl FromIterator<(u64, u64)> for WeightDistribution {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut entries = BTreeMap::new();
        for (w, a) in iter {
            if a > 0 {
                *entries.entry(w).or_insert(0) += a;
            }
        }
        Self { entries }
    }
}

fn exponent(w: u64) -> String {
    if w < 10 {
        format!("z^{w}")
    } else {
        format!("z^{{{w}}}")
    }
}

impl WeightDistribution {
    /// From a histogram indexed by weight.
    pub fn from_histogram(hist: &[u64]) -> Self {
        hist.iter()
            .enumerate()
            .map(|(w, &a)| (w as u64, a))
            .collect()
    }

    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    pub fn get(&self, w: u64) -> u64 {
        self.entries.get(&w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Smallest nonzero weight; `None` for the zero code.
    pub fn minimum_distance(&self) -> Option<u64> {
        self.entries.keys().copied().find(|&w| w > 0)
    }

    /// Number of distinct nonzero weights.
    pub fn weight_count(&self) -> usize {
        self.entries.keys().filter(|&&w| w > 0).count()
    }

    pub fn max_weight(&self) -> u64 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    /// `A_w = A_{n-w}` for every `w`.
    pub fn is_symmetric(&self, n: u64) -> bool {
        self.entries
            .iter()
            .all(|(&w, &a)| w <= n && self.get(n - w) == a)
    }

    /// Enumerator in the form `1+84z^{10}+63z^{12}+...+z^{28}`: ascending
    /// weights, coefficient 1 omitted except for the constant term, braces
    /// around exponents of two or more digits.
    pub fn enumerator_string(&self) -> String {
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|(&w, &a)| match (w, a) {
                (0, a) => a.to_string(),
                (w, 1) => exponent(w),
                (w, a) => format!("{a}{}", exponent(w)),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Inverse of [`enumerator_string`](Self::enumerator_string); also
    /// accepts `z^w` without braces and whitespace around terms.
    pub fn parse_enumerator(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for term in s.split('+') {
            let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let bad = || Error::Parse(format!("bad enumerator term {term:?}"));
            match term.split_once('z') {
                None => entries.push((0, term.parse().map_err(|_| bad())?)),
                Some((coef, rest)) => {
                    let a = if coef.is_empty() {
                        1
                    } else {
                        coef.parse().map_err(|_| bad())?
                    };
                    let w = match rest.strip_prefix('^') {
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                        Some(e) => e
                            .trim_start_matches('{')
                            .trim_end_matches('}')
                            .parse()
                            .map_err(|_| bad())?,
                    };
                    entries.push((w, a));
                }
            }
        }
        Ok(entries.into_iter().collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|(&w, &a)| serde_json::json!({ "w": w, "A": a }))
                .collect(),
        )
    }
}

/// Histogram of all `2^k` codeword weights, walking each block of low rows in
/// Gray-code order so every step is one row XOR and one popcount.
pub fn weight_distribution_enum(code: &LinearCode) -> Result<WeightDistribution> {
    let k = code.dimension();
    if k > ENUM_LIMIT {
        return Err(Error::Capacity {
            dimension: k,
            limit: ENUM_LIMIT,
        });
    }
    let n = code.length();
    if k == 0 {
        return Ok([(0, 1)].into_iter().collect());
    }
    let rows: Vec<&[u64]> = code.generators().iter().map(|r| r.words()).collect();
    let words = rows[0].len();
    let top = k.min(6);
    let low = k - top;
    let hist = (0u64..1 << top)
        .into_par_iter()
        .map(|prefix| {
            let mut cur = vec![0u64; words];
            for (bit, row) in rows[low..].iter().enumerate() {
                if prefix >> bit & 1 == 1 {
                    for (c, r) in cur.iter_mut().zip(row.iter()) {
                        *c ^= r;
                    }
                }
            }
            let mut hist = vec![0u64; n + 1];
            let weight = |v: &[u64]| v.iter().map(|w| w.count_ones() as usize).sum::<usize>();
            hist[weight(&cur)] += 1;
            for step in 1u64..1 << low {
                let row = rows[step.trailing_zeros() as usize];
                for (c, r) in cur.iter_mut().zip(row.iter()) {
                    *c ^= r;
                }
                hist[weight(&cur)] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(WeightDistribution::from_histogram(&hist))
}

/// Weight of `c_{x,y}` for every admissible `(x, y)` from Walsh values:
/// `wt = (2n - W'(y, x) + W'(y + lambda, x)) / 4`, where `W'` is the Walsh
/// transform of the effective function, obtained from that of `F` through
/// `W'(y, x) = (-1)^(c Tr(y v)) W_F(y, x + Tr(y v) a)`.
///
/// Fails with [`Error::NonInjective`] when the rank is short of `m + s`
/// (or `m + s - 1` for subcodes), since the histogram over `(x, y)` would
/// then count each codeword several times.
pub fn weight_distribution_walsh(spec: &CodeSpec) -> Result<WeightDistribution> {
    let code = build_code(spec)?;
    if code.dimension() != spec.full_rank() {
        return Err(Error::NonInjective {
            rank: code.dimension(),
            expected: spec.full_rank(),
        });
    }
    let f = spec.function;
    let spectra = f.spectra()?;
    let inp = f.input_field();
    let out = f.output_field();
    let n = code.length() as i64;
    let (lambda, a, c) = (spec.lambda, spec.offset_a, spec.offset_c);
    let v = spec.offset_vector();
    let walsh = |y: u32, x: u32| -> i64 {
        if out.trace_product(y, v) == 1 {
            let w = spectra.get(y, x ^ a);
            if c {
                -w
            } else {
                w
            }
        } else {
            spectra.get(y, x)
        }
    };
    let ys: Vec<u32> = match spec.hyperplane_normal {
        None => out.elements().collect(),
        Some(u) => out.elements().filter(|&y| out.trace_product(u, y) == 0).collect(),
    };
    let hist = ys
        .par_iter()
        .map(|&y| {
            let mut hist = vec![0u64; n as usize + 1];
            for x in inp.elements() {
                let four_w = 2 * n - walsh(y, x) + walsh(y ^ lambda, x);
                debug_assert!(four_w >= 0 && four_w % 4 == 0);
                hist[(four_w / 4) as usize] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; n as usize + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(WeightDistribution::from_histogram(&hist))
}

/// No zero column and no repeated column in the generator matrix.
pub fn dual_distance_at_least_3(code: &LinearCode) -> bool {
    let k = code.dimension();
    let mut seen = HashSet::with_capacity(code.length());
    (0..code.length()).all(|j| {
        let col = BitVec::from_fn(k, |i| code.generators()[i].get(j));
        !col.is_zero() && seen.insert(col)
    })
}

/// Whether the all-one word lies in the code.
pub fn contains_all_one(code: &LinearCode) -> bool {
    code.dimension() > 0 && in_span(code.generators(), &BitVec::ones(code.length()))
}

/// Parameters `[n, k, d]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.n, self.k, self.d)
    }
}

/// Parameters for a built code with its distribution.
pub fn parameters(code: &LinearCode, wd: &WeightDistribution) -> CodeParameters {
    CodeParameters {
        n: code.length() as u64,
        k: code.dimension() as u64,
        d: wd.minimum_distance().unwrap_or(0),
    }
}

/// The two parameter triples promised for a value `w` of the extended Walsh
/// spectrum: `[2^(m-1) -+ w/2, m + s, nl - 2^(m-2) -+ w/4]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumCodePair {
    pub w: u64,
    pub shorter: CodeParameters,
    pub longer: CodeParameters,
}

pub fn theorem2_parameters(f: &VectorialFunction) -> Result<Vec<SpectrumCodePair>> {
    let m = f.m() as u64;
    let k = m + f.s() as u64;
    let nl = f.nonlinearity()?;
    let half = 1u64 << (m - 1);
    let quarter = 1u64 << (m - 2);
    let mut out = Vec::new();
    for &w in f.extended_walsh_spectrum()?.keys() {
        let Some(d_short) = (nl + w / 4).checked_sub(quarter + w / 2) else {
            continue;
        };
        if w % 4 != 0 {
            continue;
        }
        out.push(SpectrumCodePair {
            w,
            shorter: CodeParameters {
                n: half - w / 2,
                k,
                d: d_short,
            },
            longer: CodeParameters {
                n: half + w / 2,
                k,
                d: nl - quarter + w / 4,
            },
        });
    }
    Ok(out)
}

/// Whether `2^m - 2 nl(F) < n`, the hypothesis that pins the dimension.
pub fn full_rank_hypothesis(spec: &CodeSpec) -> Result<bool> {
    let f = spec.function;
    let n = f
        .with_affine_offset(spec.lambda, spec.offset_a, spec.offset_c)?
        .weight() as u64;
    let nl = f.nonlinearity()?;
    Ok((f.input_field().size() as u64) < n + 2 * nl)
}

/// Lower bound `nl(F) - (2^m - n) / 2` on nonzero weights under the hypothesis.
pub fn minimum_distance_bound(spec: &CodeSpec) -> Result<i64> {
    let f = spec.function;
    let n = f
        .with_affine_offset(spec.lambda, spec.offset_a, spec.offset_c)?
        .weight() as i64;
    let nl = f.nonlinearity()? as i64;
    let size = f.input_field().size() as i64;
    // Weights are integers, so the bound rounds up.
    Ok(nl - (size - n).div_euclid(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vecfun::{gold, identity, mm_product};

    fn both(spec: &CodeSpec) -> (LinearCode, WeightDistribution) {
        let code = build_code(spec).unwrap();
        let e = weight_distribution_enum(&code).unwrap();
        if code.dimension() == spec.full_rank() {
            assert_eq!(weight_distribution_walsh(spec).unwrap(), e);
        }
        (code, e)
    }

    /// Weight distribution straight from the definition of `c_{x,y}`.
    fn brute_distribution(spec: &CodeSpec) -> WeightDistribution {
        let f = spec.function;
        let inp = f.input_field();
        let out = f.output_field();
        let g = spec.effective_function().unwrap();
        let support = f
            .with_affine_offset(spec.lambda, spec.offset_a, spec.offset_c)
            .unwrap()
            .support();
        let mut words = HashSet::new();
        for x in inp.elements() {
            for y in out.elements() {
                if let Some(u) = spec.hyperplane_normal {
                    if out.trace_product(u, y) == 1 {
                        continue;
                    }
                }
                let word: Vec<u32> = support
                    .iter()
                    .map(|&d| inp.trace(inp.mul(x, d), 1).unwrap() ^ out.trace(out.mul(y, g.eval(d)), 1).unwrap())
                    .collect();
                words.insert(word);
            }
        }
        words
            .iter()
            .map(|w| (w.iter().sum::<u32>() as u64, 1))
            .collect()
    }

    #[test]
    fn zero_code_and_string_format() {
        let code = LinearCode::from_rows(4, &[]).unwrap();
        let wd = weight_distribution_enum(&code).unwrap();
        assert_eq!(wd.enumerator_string(), "1");
        assert_eq!(wd.minimum_distance(), None);
        assert!(!contains_all_one(&code));
        let wd = WeightDistribution::parse_enumerator("1+60z^4+256z^6+390z^8+256z^{10}+60z^{12}+z^{16}").unwrap();
        assert_eq!(wd.total(), 1024);
        assert_eq!(wd.get(16), 1);
        assert_eq!(wd.enumerator_string(), "1+60z^4+256z^6+390z^8+256z^{10}+60z^{12}+z^{16}");
        assert_eq!(wd.minimum_distance(), Some(4));
        assert!(wd.is_symmetric(16));
        assert_eq!(wd.to_json()[0], serde_json::json!({"w": 0, "A": 1}));
        assert!(WeightDistribution::parse_enumerator("1+x^2").is_err());
    }

    #[test]
    fn duplicated_column_fails_dual_distance() {
        let rows = [
            BitVec::from_fn(4, |j| j == 0 || j == 1),
            BitVec::from_fn(4, |j| j == 0 || j == 1 || j == 2),
            BitVec::from_fn(4, |j| j == 3),
        ];
        let code = LinearCode::from_rows(4, &rows).unwrap();
        assert!(!dual_distance_at_least_3(&code));
        let rows = [BitVec::from_fn(3, |j| j == 0), BitVec::from_fn(3, |j| j == 1)];
        let code = LinearCode::from_rows(3, &rows).unwrap();
        assert!(!dual_distance_at_least_3(&code));
    }

    #[test]
    fn small_gold_code() {
        let f = gold(5, 1).unwrap();
        let a = f.input_field().alpha_pow(3);
        let spec = CodeSpec::new(&f, 1).offset(a, false);
        let (code, wd) = both(&spec);
        assert_eq!((code.length(), code.dimension()), (12, 10));
        assert_eq!(wd.minimum_distance(), Some(2));
        assert!(contains_all_one(&code));
        assert!(dual_distance_at_least_3(&code));
        assert_eq!(wd, brute_distribution(&spec));
    }

    #[test]
    fn enumeration_agrees_with_definition() {
        let g = gold(5, 1).unwrap();
        let mm = mm_product(2).unwrap();
        let id = identity(4).unwrap();
        let specs = [
            CodeSpec::new(&g, 3),
            CodeSpec::new(&g, 7).offset(5, true),
            CodeSpec::new(&g, 1).subcode(1),
            CodeSpec::new(&g, 6).offset(9, false).subcode_default().unwrap(),
            CodeSpec::new(&mm, 1),
            CodeSpec::new(&mm, 2).offset(3, true),
            CodeSpec::new(&id, 3),
        ];
        for spec in &specs {
            let (_, wd) = both(spec);
            assert_eq!(wd, brute_distribution(spec), "{:?}", spec.header());
        }
    }

    #[test]
    fn degenerate_function_reports_low_rank() {
        let f = identity(4).unwrap();
        let spec = CodeSpec::new(&f, 1);
        let code = build_code(&spec).unwrap();
        assert!(code.dimension() < 8);
        assert!(matches!(
            weight_distribution_walsh(&spec),
            Err(Error::NonInjective { .. })
        ));
        assert!(!full_rank_hypothesis(&spec).unwrap());
    }

    #[test]
    fn spec_validation() {
        let f = mm_product(4).unwrap();
        assert!(build_code(&CodeSpec::new(&f, 0)).is_err());
        // Tr(1) = 0 in GF(16): 1 lies in every hyperplane through lambda's normal 1.
        assert!(CodeSpec::new(&f, 1).subcode_default().is_err());
        assert!(build_code(&CodeSpec::new(&f, 1).subcode(1)).is_err());
        assert!(build_code(&CodeSpec::new(&f, 1).offset(1 << 9, false)).is_err());
    }

    #[test]
    fn subcode_drops_all_one_and_one_dimension() {
        let f = gold(7, 1).unwrap();
        for nu in [1u32, 2, 77] {
            let spec = CodeSpec::new(&f, nu).subcode_default().unwrap();
            let (code, wd) = both(&spec);
            assert_eq!(code.dimension(), 13);
            assert!(!contains_all_one(&code));
            assert!(dual_distance_at_least_3(&code));
            assert_eq!(wd.total(), 1 << 13);
        }
    }

    #[test]
    fn exports() {
        let f = mm_product(2).unwrap();
        let code = build_code(&CodeSpec::new(&f, 1)).unwrap();
        let text = code.generator_text();
        assert!(text.starts_with("# m = 4, s = 2"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
        let json = code.generator_json();
        assert_eq!(json["dimension"], 6);
        assert_eq!(json["header"]["lambda"], 1);
    }

    #[test]
    fn spectrum_pairs_for_gold() {
        let f = gold(5, 1).unwrap();
        let pairs = theorem2_parameters(&f).unwrap();
        let strs: Vec<String> = pairs
            .iter()
            .flat_map(|p| [p.shorter.to_string(), p.longer.to_string()])
            .collect();
        assert_eq!(strs, ["[16,10,4]", "[16,10,4]", "[12,10,2]", "[20,10,6]"]);
    }
}
