//! Closed-form weight distributions, Kloosterman sums, and the counting
//! lemmas behind them, each paired with an empirical counterpart.
//!
//! Table formulas contain fractional terms, so they are evaluated over the
//! rationals and then required to be non-negative integers.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::boolfun::BooleanFunction;
use crate::codes::WeightDistribution;
use crate::error::{domain, Error, Result};
use crate::gf2m::FieldSpec;
use crate::vecfun::{inverse_root, VectorialFunction};

type Q = Ratio<i128>;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

/// `2^e` for any integer `e`, negative exponents included.
fn p2(e: i64) -> Q {
    if e >= 0 {
        q(1i128 << e)
    } else {
        Q::new(1, 1i128 << (-e))
    }
}

fn to_count(v: Q, what: &str) -> Result<u64> {
    if !v.is_integer() || v < q(0) {
        return domain(format!("{what} evaluates to {v}, not a non-negative integer"));
    }
    Ok(*v.numer() as u64)
}

/// Which closed-form table a prediction comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableId {
    Table1,
    Table2,
    Table3,
    Table5,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::Table1 => "table1",
            TableId::Table2 => "table2",
            TableId::Table3 => "table3",
            TableId::Table5 => "table5",
        })
    }
}

/// A predicted weight distribution with the parameters it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedDistribution {
    pub table: TableId,
    pub m: u32,
    pub n: u64,
    pub distribution: WeightDistribution,
}

fn assemble(table: TableId, m: u32, n: u64, rows: Vec<(Q, Q)>) -> Result<PredictedDistribution> {
    let mut entries = Vec::with_capacity(rows.len());
    for (w, a) in rows {
        let w = to_count(w, &format!("{table} weight"))?;
        let a = to_count(a, &format!("{table} multiplicity at weight {w}"))?;
        entries.push((w, a));
    }
    Ok(PredictedDistribution {
        table,
        m,
        n,
        distribution: entries.into_iter().collect(),
    })
}

fn bent_lengths(m: u32) -> Result<[u64; 2]> {
    if !m.is_multiple_of(2) || m < 4 {
        return domain(format!("bent-function tables need even m >= 4, got {m}"));
    }
    let (a, b) = (1u64 << (m - 1), 1u64 << (m / 2 - 1));
    Ok([a - b, a + b])
}

fn check_bent_length(m: u32, n: u64) -> Result<()> {
    if !bent_lengths(m)?.contains(&n) {
        return domain(format!(
            "length {n} is not 2^(m-1) -+ 2^(m/2-1) for m = {m}"
        ));
    }
    Ok(())
}

fn odd_at_least_5(m: u32) -> Result<()> {
    if m.is_multiple_of(2) || m < 5 {
        return domain(format!("this table needs odd m >= 5, got {m}"));
    }
    Ok(())
}

/// Full code of a bent `(m, m/2)` function with selector weight `n`.
pub fn table1(m: u32, n: u64) -> Result<PredictedDistribution> {
    check_bent_length(m, n)?;
    let (mi, nq) = (m as i64, q(n as i128));
    let outer = p2(mi / 2 - 1) * nq - p2(-mi) * nq * nq - p2(mi - 2) + Q::new(1, 4);
    let inner = p2(mi) - q(1);
    let middle = (q(2) * nq * nq - p2(3 * mi / 2) * nq) * p2(-mi) + p2(3 * mi / 2)
        - q(3) * p2(mi - 1)
        - Q::new(1, 2);
    let c = nq / q(2);
    let rows = vec![
        (q(0), q(1)),
        (c - p2(mi / 2 - 1), outer),
        (c - p2(mi / 2 - 2), inner),
        (c, middle),
        (c + p2(mi / 2 - 2), inner),
        (c + p2(mi / 2 - 1), outer),
        (nq, q(1)),
    ];
    assemble(TableId::Table1, m, n, rows)
}

/// Full code of an almost bent power permutation on odd `m`.
pub fn table2(m: u32) -> Result<PredictedDistribution> {
    odd_at_least_5(m)?;
    let mi = m as i64;
    let outer = p2(2 * mi - 4) - p2(mi - 3);
    let inner = p2(2 * mi - 2);
    let middle = q(3) * p2(2 * mi - 3) + p2(mi - 2) - q(2);
    let c = p2(mi - 2);
    let rows = vec![
        (q(0), q(1)),
        (c - p2((mi - 1) / 2), outer),
        (c - p2((mi - 3) / 2), inner),
        (c, middle),
        (c + p2((mi - 3) / 2), inner),
        (c + p2((mi - 1) / 2), outer),
        (p2(mi - 1), q(1)),
    ];
    assemble(TableId::Table2, m, 1 << (m - 1), rows)
}

/// Hyperplane subcode of a bent `(m, m/2)` function with `F(0) = 0`.
pub fn table3(m: u32, n: u64) -> Result<PredictedDistribution> {
    check_bent_length(m, n)?;
    let (mi, nq) = (m as i64, q(n as i128));
    let outer = p2(mi / 2 - 2) * nq - p2(-mi - 1) * nq * nq - p2(mi - 3) + Q::new(1, 8);
    let shift = nq * p2(-(mi - 2) / 2);
    let low = (p2(mi) - q(1) - shift) / q(2);
    let high = (p2(mi) - q(1) + shift) / q(2);
    let middle = (nq * nq - p2(3 * mi / 2 - 1) * nq) * p2(-mi) + p2(3 * mi / 2 - 1)
        - q(3) * p2(mi - 2)
        - Q::new(1, 4);
    let c = nq / q(2);
    let rows = vec![
        (q(0), q(1)),
        (c - p2(mi / 2 - 1), outer),
        (c - p2(mi / 2 - 2), low),
        (c, middle),
        (c + p2(mi / 2 - 2), high),
        (c + p2(mi / 2 - 1), outer),
    ];
    assemble(TableId::Table3, m, n, rows)
}

/// Hyperplane subcode of a Gold function on odd `m`, through `K(1)`.
pub fn table5(m: u32) -> Result<PredictedDistribution> {
    odd_at_least_5(m)?;
    let mi = m as i64;
    let k = q(kloosterman_closed(m) as i128);
    let c = p2(mi - 2);
    let rows = vec![
        (q(0), q(1)),
        (
            c - p2((mi - 1) / 2),
            p2(2 * mi - 5) + p2((mi - 5) / 2) - p2_half(mi - 7) * k - p2(mi - 4),
        ),
        (
            c - p2((mi - 3) / 2),
            p2(2 * mi - 3) + p2_half(mi - 5) * k - p2((mi - 1) / 2),
        ),
        (c, q(3) * p2(2 * mi - 4) + p2(mi - 3) - q(1)),
        (
            c + p2((mi - 3) / 2),
            p2(2 * mi - 3) - p2_half(mi - 5) * k + p2((mi - 1) / 2),
        ),
        (
            c + p2((mi - 1) / 2),
            p2(2 * mi - 5) - p2_half(mi - 5) + p2_half(mi - 7) * k - p2(mi - 4),
        ),
    ];
    assemble(TableId::Table5, m, 1 << (m - 1), rows)
}

/// `2^(e/2)` for even `e` (all uses here have odd `m`, so `m - 5` and
/// `m - 7` are even).
fn p2_half(e: i64) -> Q {
    debug_assert!(e % 2 == 0);
    p2(e / 2)
}

fn binomial(n: u64, k: u64) -> i128 {
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// `K(1) = 1 - sum_{t=0}^{floor(m/2)} (-1)^(m-t) m/(m-t) C(m-t, t) 2^t`.
pub fn kloosterman_closed(m: u32) -> i64 {
    assert!(m >= 1, "Kloosterman sums need m >= 1");
    let m = m as u64;
    let mut sum: i128 = 0;
    for t in 0..=m / 2 {
        let numerator = (m as i128)
            .checked_mul(binomial(m - t, t))
            .expect("binomial term overflow");
        assert_eq!(
            numerator % (m - t) as i128,
            0,
            "m/(m-t) C(m-t,t) is an integer"
        );
        let term = numerator / (m - t) as i128 * (1i128 << t);
        sum += if (m - t).is_multiple_of(2) { term } else { -term };
    }
    (1 - sum) as i64
}

/// `K(1) = sum_x (-1)^(Tr(x^(2^m-2) + x))`, with the `x = 0` term read as
/// `Tr(0) = 0`.
pub fn kloosterman_brute(m: u32) -> Result<i64> {
    if m == 1 {
        // GF(2): x = 0 contributes +1 by convention, x = 1 gives Tr(1 + 1) = 0.
        return Ok(2);
    }
    let k = FieldSpec::with_default_modulus(m)?;
    Ok(k.elements()
        .map(|x| {
            if k.abs_trace(k.inverse_or_zero(x) ^ x) == 0 {
                1
            } else {
                -1
            }
        })
        .sum())
}

/// Counts of Walsh values `0`, `+2^s` and `-2^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeCounts {
    pub zero: u64,
    pub plus: u64,
    pub minus: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub predicted: ThreeCounts,
    pub empirical: ThreeCounts,
}

impl CountCheck {
    pub fn matches(&self) -> bool {
        self.predicted == self.empirical
    }
}

/// Value counts for a spectrum inside `{0, +-2^s}`.
pub fn anne_counts(f: &BooleanFunction, s_exp: u32) -> Result<CountCheck> {
    let m = f.num_vars() as i64;
    let s = s_exp as i64;
    if s > m {
        return domain(format!("spectral exponent {s} exceeds m = {m}"));
    }
    let spectrum = f.walsh_full();
    let peak = 1i64 << s;
    if let Some(&bad) = spectrum.values().iter().find(|&&v| v != 0 && v.abs() != peak) {
        return domain(format!("Walsh value {bad} lies outside {{0, +-{peak}}}"));
    }
    let sign = if f.eval(0) { -1 } else { 1 };
    let predicted = ThreeCounts {
        zero: to_count(p2(m) - p2(2 * m - 2 * s), "zero count")?,
        plus: to_count(p2(2 * m - 2 * s - 1) + q(sign) * p2(m - s - 1), "plus count")?,
        minus: to_count(p2(2 * m - 2 * s - 1) - q(sign) * p2(m - s - 1), "minus count")?,
    };
    let empirical = ThreeCounts {
        zero: spectrum.count(0) as u64,
        plus: spectrum.count(peak) as u64,
        minus: spectrum.count(-peak) as u64,
    };
    Ok(CountCheck {
        predicted,
        empirical,
    })
}

fn require_ab_power(f: &VectorialFunction) -> Result<()> {
    if !f.is_almost_bent()? || !f.is_bijective() {
        return domain("need an almost bent permutation");
    }
    if f.eval(0) != 0 || f.eval(1) != 1 {
        return domain("need a power function (F(0) = 0, F(1) = 1)");
    }
    Ok(())
}

/// Predicted distribution of `W_{f_{lambda+y}}(x) - W_{f_y}(x)` over `x` and
/// `y` outside `{0, lambda}`, for an almost bent power permutation.
pub fn walsh_diff_prediction(m: u32) -> Result<BTreeMap<i64, u64>> {
    odd_at_least_5(m)?;
    let mi = m as i64;
    let outer = to_count(p2(2 * mi - 4) - p2(mi - 3), "N(+-2^((m+3)/2))")?;
    let inner = to_count(p2(2 * mi - 2) - p2(mi - 1), "N(+-2^((m+1)/2))")?;
    let zero = to_count(q(3) * p2(2 * mi - 3) + p2(mi - 2) - p2(mi), "N(0)")?;
    let big = 1i64 << ((m + 3) / 2);
    let small = 1i64 << m.div_ceil(2);
    Ok([
        (-big, outer),
        (-small, inner),
        (0, zero),
        (small, inner),
        (big, outer),
    ]
    .into_iter()
    .collect())
}

/// Empirical counterpart of [`walsh_diff_prediction`].
pub fn walsh_diff_counts(f: &VectorialFunction, lambda: u32) -> Result<BTreeMap<i64, u64>> {
    require_ab_power(f)?;
    let out = f.output_field();
    out.check(lambda)?;
    if lambda == 0 {
        return domain("lambda must be nonzero");
    }
    let sp = f.spectra()?;
    let mut counts = BTreeMap::new();
    for y in out.elements().filter(|&y| y != 0 && y != lambda) {
        for x in f.input_field().elements() {
            *counts.entry(sp.get(lambda ^ y, x) - sp.get(y, x)).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

fn require_quadratic_semibent(f: &BooleanFunction) -> Result<()> {
    if !f.is_semibent()? || f.algebraic_degree() != 2 {
        return domain("need a quadratic semi-bent function");
    }
    Ok(())
}

/// Walsh value counts on the hyperplane `E = {a : Tr(u a) = 0}`, which must
/// differ from the zero set of the spectrum.
pub fn hyperplane_walsh_counts(f: &BooleanFunction, u: u32) -> Result<CountCheck> {
    require_quadratic_semibent(f)?;
    let k = f.field();
    k.check(u)?;
    if u == 0 {
        return domain("hyperplane normal must be nonzero");
    }
    let m = k.degree() as i64;
    if m < 5 {
        return domain("need m >= 5");
    }
    if f.zero_walsh_set().hyperplane_normal == Some(u) {
        return domain("E coincides with the zero set of the spectrum");
    }
    let delta = 1 - f.eval_bit(0) as i64 - f.eval_bit(u) as i64;
    let predicted = ThreeCounts {
        zero: to_count(p2(m - 2), "N(E,0)")?,
        plus: to_count(p2(m - 3) + q(delta as i128) * p2((m - 3) / 2), "N(E,+)")?,
        minus: to_count(p2(m - 3) - q(delta as i128) * p2((m - 3) / 2), "N(E,-)")?,
    };
    let peak = 1i64 << ((m + 1) / 2);
    let mut empirical = ThreeCounts {
        zero: 0,
        plus: 0,
        minus: 0,
    };
    let spectrum = f.walsh_full();
    for a in k.elements().filter(|&a| k.trace_product(u, a) == 0) {
        match spectrum.at(a) {
            0 => empirical.zero += 1,
            v if v == peak => empirical.plus += 1,
            _ => empirical.minus += 1,
        }
    }
    Ok(CountCheck {
        predicted,
        empirical,
    })
}

/// Both sums of the squared-difference identity for `f_nu = f_lambda + f_mu`.
///
/// `total` is the sum of `(W_lambda + W_mu)^2`; the sum of the two squares
/// separately is `2^(2m+1)` for any pair by Parseval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquareSums {
    pub difference: i128,
    pub difference_predicted: i128,
    pub total: i128,
    pub total_predicted: i128,
}

impl SquareSums {
    pub fn holds(&self) -> bool {
        self.difference == self.difference_predicted && self.total == self.total_predicted
    }
}

pub fn squaresum_identity_check(f_lambda: &BooleanFunction, f_mu: &BooleanFunction) -> Result<SquareSums> {
    let nu = f_lambda.xor(f_mu)?;
    let m = f_lambda.num_vars();
    let n = nu.weight() as i128;
    let (a, b) = (f_lambda.walsh_full(), f_mu.walsh_full());
    let mut difference = 0i128;
    let mut total = 0i128;
    for (&x, &y) in a.values().iter().zip(b.values()) {
        let (x, y) = (x as i128, y as i128);
        difference += (x - y) * (x - y);
        total += (x + y) * (x + y);
    }
    Ok(SquareSums {
        difference,
        difference_predicted: (1i128 << (m + 2)) * n,
        total,
        total_predicted: (1i128 << (2 * m + 2)) - (1i128 << (m + 2)) * n,
    })
}

/// Empirical and predicted weights of `s_x = (Tr(x d + lambda F(d)))_{d in D}`
/// over all `x`, where `D` is the support of `Tr((lambda + mu) F)` and `F` is
/// a Gold function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDistribution {
    pub predicted: WeightDistribution,
    pub empirical: WeightDistribution,
}

pub fn s_lambda_distribution(f: &VectorialFunction, lambda: u32, mu: u32) -> Result<SetDistribution> {
    require_ab_power(f)?;
    let k = f.input_field();
    let m = k.degree() as i64;
    if m < 5 {
        return domain("need m >= 5");
    }
    if lambda == 0 || mu == 0 || lambda == mu {
        return domain("lambda and mu must be distinct and nonzero");
    }
    k.check(lambda)?;
    k.check(mu)?;
    if f.component(1)?.algebraic_degree() != 2 {
        return domain("need a quadratic (Gold) function");
    }
    let support = f.component(lambda ^ mu)?.support();
    let lam_dual = k.trace_dual(lambda);
    let lam_f: Vec<u32> = support
        .iter()
        .map(|&d| (lam_dual & f.eval(d)).count_ones() & 1)
        .collect();
    let tau = k.trace_dual_table();
    let empirical = k
        .elements()
        .map(|x| {
            let xd = tau[x as usize];
            let w = support
                .iter()
                .zip(&lam_f)
                .filter(|(&d, &t)| ((xd & d).count_ones() & 1) ^ t == 1)
                .count();
            (w as u64, 1)
        })
        .collect();
    let t_lm = k.abs_trace(k.mul(lambda, k.inverse(mu)?)) as i128;
    let t_ml = k.abs_trace(k.mul(mu, k.inverse(lambda)?)) as i128;
    let c = p2(m - 2);
    let rows = [
        (c - p2((m - 1) / 2), p2(m - 4) + p2_half(m - 5) * q(t_lm - t_ml)),
        (c - p2((m - 3) / 2), p2(m - 2) + p2((m - 3) / 2) * q(t_ml - t_lm)),
        (c, q(3) * p2(m - 3)),
        (c + p2((m - 3) / 2), p2(m - 2) + p2((m - 3) / 2) * q(t_lm - t_ml)),
        (c + p2((m - 1) / 2), p2(m - 4) + p2_half(m - 5) * q(t_ml - t_lm)),
    ];
    let predicted = rows
        .into_iter()
        .map(|(w, a)| Ok((to_count(w, "weight")?, to_count(a, "multiplicity")?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    Ok(SetDistribution {
        predicted,
        empirical,
    })
}

/// How the pair `(Tr(x/(x+mu)), Tr((x+mu)/x))` is read at `x = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroConvention {
    /// `1/0` is read as `0`, matching the extension of `K(1)` to `x = 0`.
    #[default]
    InverseAsZero,
    /// `x = 0` is left out of the count.
    Exclude,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    /// `A_(0,0)`, `A_(0,1)`, `A_(1,0)`, `A_(1,1)`.
    pub predicted: [i64; 4],
    pub empirical: [i64; 4],
}

impl PairCounts {
    pub fn matches(&self) -> bool {
        self.predicted == self.empirical
    }
}

/// Counts of `(Tr(x/(x+mu)), Tr((x+mu)/x))` over `x` with `Tr(x/mu) = 0`.
pub fn kloo_pairs_counts(m: u32, mu: u32, convention: ZeroConvention) -> Result<PairCounts> {
    if m.is_multiple_of(2) {
        return domain(format!("need odd m, got {m}"));
    }
    let k = FieldSpec::with_default_modulus(m)?;
    k.check(mu)?;
    if mu == 0 {
        return domain("mu must be nonzero");
    }
    let mu_inv = k.inverse(mu)?;
    let mut empirical = [0i64; 4];
    for x in k.elements().filter(|&x| k.trace_product(mu_inv, x) == 0) {
        if x == 0 && convention == ZeroConvention::Exclude {
            continue;
        }
        let i = k.abs_trace(k.div_or_zero(x, x ^ mu));
        let j = k.abs_trace(k.div_or_zero(x ^ mu, x));
        empirical[(2 * i + j) as usize] += 1;
    }
    let kq = q(kloosterman_closed(m) as i128);
    let base = p2(m as i64 - 3);
    let half = Q::new(1, 2);
    let eighth = kq / q(8);
    let values = [
        base + eighth + half,
        base + eighth - half,
        base - q(3) * eighth + half,
        base + eighth - half,
    ];
    let mut predicted = [0i64; 4];
    for (p, v) in predicted.iter_mut().zip(values) {
        *p = to_count(v, "pair count")? as i64;
    }
    Ok(PairCounts {
        predicted,
        empirical,
    })
}

/// Convenience: `lambda^(-1/d)` for the power exponent `d` of `f`, found by
/// matching `f(alpha) = alpha^d`.
pub fn power_exponent(f: &VectorialFunction) -> Result<u64> {
    let k = f.input_field();
    let target = f.eval(k.generator());
    (1..k.group_order())
        .find(|&d| k.alpha_pow(d) == target)
        .filter(|&d| k.elements().all(|x| f.eval(x) == k.pow(x, d)))
        .ok_or_else(|| Error::Domain("not a power function".into()))
}

/// The nonzero element orthogonal to the zero set of `Tr(lambda x^d)`.
pub fn predicted_zero_set_normal(f: &VectorialFunction, lambda: u32) -> Result<u32> {
    inverse_root(f.input_field(), lambda, power_exponent(f)?)
}
