//! Truncated integer power series and the search comparing a product of cyclotomic
//! quotients `prod (1 - t^{d_i 2^{j_i}}) / (1 - t^{d_i})` with `(1 - t^{2^s}) / (1 - t)`.

use std::fmt;
use std::ops::Mul;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("degree {deg} must be divisible by 4 and by the index {ind}, a power of two")]
    Divisibility { deg: u64, ind: u64 },
    #[error("truncation {n} cannot separate series of degree below {needed}")]
    TruncationTooSmall { n: usize, needed: usize },
    #[error("need at least one factor")]
    NoFactors,
    #[error("exponent {0} too large")]
    TooLarge(u32),
}

/// Power series with integer coefficients, truncated below `t^order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSeries {
    coeffs: Vec<i64>,
}

impl IntSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![0; order] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(1, 0, order)
    }

    pub fn monomial(c: i64, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(k: usize, order: usize) -> Self {
        Self::one(order).sub(&Self::monomial(1, k, order))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        Self { coeffs: (0..order).map(|k| self.coeffs[k] - o.coeffs[k]).collect() }
    }

    /// Largest `k` with a nonzero coefficient below the truncation.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }
}

impl Mul for &IntSeries {
    type Output = IntSeries;
    fn mul(self, o: &IntSeries) -> IntSeries {
        let order = self.order().min(o.order());
        let mut out = IntSeries::zero(order);
        for (i, &a) in self.coeffs.iter().enumerate().take(order).filter(|(_, &a)| a != 0) {
            for (j, &b) in o.coeffs.iter().enumerate().take(order - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Debug for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}t"),
                _ => format!("{c}t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{} + O(t^{})", terms.join(" + "), self.order())
        }
    }
}

fn pow2(j: u32) -> Result<usize, SeriesError> {
    1usize.checked_shl(j).filter(|&v| v < 1 << 40).ok_or(SeriesError::TooLarge(j))
}

/// `(1 - t^{d 2^j}) / (1 - t^d) = 1 + t^d + ... + t^{(2^j - 1) d}`, truncated below `t^order`.
pub fn cyclo_quotient(d: usize, j: u32, order: usize) -> Result<IntSeries, SeriesError> {
    assert!(d >= 1, "d must be positive");
    let terms = pow2(j)?;
    let mut s = IntSeries::zero(order);
    for k in (0..terms).map(|m| m * d).take_while(|&k| k < order) {
        s.coeffs[k] = 1;
    }
    Ok(s)
}

/// `(1 - t^{2^s}) / (1 - t)`.
pub fn pgl_gen_function(s: u32, order: usize) -> Result<IntSeries, SeriesError> {
    cyclo_quotient(1, s, order)
}

/// Parameters of the half-spin J-invariant for an algebra of given degree and index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JParams {
    /// Number of entries, a quarter of the degree.
    pub r: usize,
    /// `d_i = 2i - 1`.
    pub d: Vec<usize>,
    /// Bound on the first entry, `v2(deg / 2)`.
    pub k1: u32,
    /// `ind = 2^s`.
    pub s: u32,
    pub odd_cofactor: bool,
    /// `k1 = s - 1`, expected exactly when the cofactor is odd.
    pub k1_is_s_minus_1: bool,
}

pub fn hspin_params(deg: u64, ind: u64) -> Result<JParams, SeriesError> {
    let bad = || SeriesError::Divisibility { deg, ind };
    if deg == 0 || !deg.is_multiple_of(4) || !ind.is_power_of_two() || !deg.is_multiple_of(ind) {
        return Err(bad());
    }
    let s = ind.trailing_zeros();
    let k1 = (deg / 2).trailing_zeros();
    let r = (deg / 4) as usize;
    Ok(JParams {
        r,
        d: (1..=r).map(|i| 2 * i - 1).collect(),
        k1,
        s,
        odd_cofactor: (deg / ind) % 2 == 1,
        k1_is_s_minus_1: s >= 1 && k1 == s - 1,
    })
}

/// Two readings of the number of factors in the product for index `2^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorCount {
    /// `floor(s / 2)` factors, the upper limit of the displayed product.
    HalfIndexExponent,
    /// `deg / 4 = 2^{s-2}` factors when degree equals index.
    QuarterDegree,
}

impl FactorCount {
    pub const ALL: [FactorCount; 2] = [FactorCount::HalfIndexExponent, FactorCount::QuarterDegree];

    pub fn factors(self, s: u32) -> usize {
        match self {
            FactorCount::HalfIndexExponent => (s / 2) as usize,
            FactorCount::QuarterDegree => 1usize << s.saturating_sub(2),
        }
        .max(1)
    }
}

impl fmt::Display for FactorCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorCount::HalfIndexExponent => "r = floor(s/2)",
            FactorCount::QuarterDegree => "r = 2^(s-2)",
        })
    }
}

/// `prod_i (1 - t^{(2i-1) 2^{j_i}}) / (1 - t^{2i-1})`.
pub fn hspin_product(js: &[u32], order: usize) -> Result<IntSeries, SeriesError> {
    js.iter().enumerate().try_fold(IntSeries::one(order), |acc, (i, &j)| {
        Ok(&acc * &cyclo_quotient(2 * i + 1, j, order)?)
    })
}

/// `sum_i d_i (2^{j_i} - 1)`, the degree of the product polynomial.
pub fn product_degree(js: &[u32]) -> usize {
    js.iter().enumerate().map(|(i, &j)| (2 * i + 1) * ((1usize << j) - 1)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub s: u32,
    pub r: usize,
    pub order: usize,
    /// Tuples `(j_1, ..., j_r)` with `0 <= j_i <= s` giving equality.
    pub solutions: Vec<Vec<u32>>,
    pub all_j1_at_least_s: bool,
    /// `(s, 0, ..., 0)` is among the solutions.
    pub has_trivial: bool,
}

fn extend(prefix: &mut Vec<u32>, r: usize, s: u32, budget: usize, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == r {
        if budget == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let d = 2 * prefix.len() + 1;
    for j in 0..=s {
        let cost = d * ((1usize << j) - 1);
        if cost > budget {
            break;
        }
        prefix.push(j);
        extend(prefix, r, s, budget - cost, out);
        prefix.pop();
    }
}

/// Tuples of the right total degree, grouped by `j_1`.
fn degree_matched(s: u32, r: usize) -> Vec<Vec<u32>> {
    let budget = (1usize << s) - 1;
    (0..=s)
        .into_par_iter()
        .flat_map_iter(|j1| {
            let mut out = Vec::new();
            let cost = (1usize << j1) - 1;
            if cost <= budget {
                extend(&mut vec![j1], r, s, budget - cost, &mut out);
            }
            out
        })
        .collect()
}

/// Exhaustive search over `0 <= j_i <= s` for equality of the two generating functions.
/// Tuples of the wrong total degree are pruned.
pub fn search_equality(s: u32, r: usize, order: usize) -> Result<SearchReport, SeriesError> {
    if r == 0 {
        return Err(SeriesError::NoFactors);
    }
    let needed = pow2(s)?;
    if order < needed {
        return Err(SeriesError::TruncationTooSmall { n: order, needed });
    }
    let target = pgl_gen_function(s, order)?;
    let mut solutions = Vec::new();
    for js in degree_matched(s, r) {
        if hspin_product(&js, order)? == target {
            solutions.push(js);
        }
    }
    let trivial: Vec<u32> = std::iter::once(s).chain(std::iter::repeat_n(0, r - 1)).collect();
    Ok(SearchReport {
        s,
        r,
        order,
        all_j1_at_least_s: solutions.iter().all(|js| js[0] >= s),
        has_trivial: solutions.contains(&trivial),
        solutions,
    })
}

/// Default truncation `2 * 2^s`.
pub fn default_order(s: u32) -> usize {
    2usize << s
}

/// For every tuple with `r >= 2` factors and `j_i <= s` whose product agrees with the target
/// through `t^3`, whether `j_1 >= 2` and `j_2 = 0`. Returns the number of such tuples and
/// whether all satisfy the conclusion.
pub fn low_coefficient_trace(s: u32, r: usize) -> Result<(usize, bool), SeriesError> {
    assert!(r >= 2 && s >= 2, "trace needs two factors and s >= 2");
    let target = pgl_gen_function(s, 4)?;
    let mut count = 0;
    let mut ok = true;
    let mut js = vec![0u32; r];
    loop {
        if hspin_product(&js, 4)? == target {
            count += 1;
            ok &= js[0] >= 2 && js[1] == 0;
        }
        let Some(pos) = js.iter().position(|&j| j < s) else { break };
        js[pos] += 1;
        js[..pos].iter_mut().for_each(|j| *j = 0);
    }
    Ok((count, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_examples() {
        assert_eq!(cyclo_quotient(1, 2, 8).unwrap().coeffs(), &[1, 1, 1, 1, 0, 0, 0, 0]);
        assert_eq!(cyclo_quotient(5, 0, 8).unwrap(), IntSeries::one(8));
        assert_eq!(cyclo_quotient(3, 1, 8).unwrap().coeffs(), &[1, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(pgl_gen_function(3, 16).unwrap().degree(), Some(7));
        assert_eq!(pgl_gen_function(0, 4).unwrap(), IntSeries::one(4));
    }

    #[test]
    fn quotient_times_denominator() {
        for d in 1..6 {
            for j in 0..5 {
                let n = 64;
                let lhs = &cyclo_quotient(d, j, n).unwrap() * &IntSeries::one_minus_t_pow(d, n);
                assert_eq!(lhs, IntSeries::one_minus_t_pow(d << j, n), "d={d} j={j}");
            }
        }
    }

    #[test]
    fn params() {
        let p = hspin_params(16, 16).unwrap();
        assert_eq!((p.r, p.k1, p.s, p.odd_cofactor, p.k1_is_s_minus_1), (4, 3, 4, true, true));
        assert_eq!(p.d, vec![1, 3, 5, 7]);
        let p = hspin_params(16, 4).unwrap();
        assert_eq!((p.k1, p.s, p.odd_cofactor, p.k1_is_s_minus_1), (3, 2, false, false));
        let p = hspin_params(8, 8).unwrap();
        assert_eq!((p.r, p.k1, p.k1_is_s_minus_1), (2, 2, true));
        assert!(hspin_params(12, 8).is_err());
        assert!(hspin_params(6, 2).is_err());
    }

    #[test]
    fn searches() {
        let r = search_equality(2, 1, 8).unwrap();
        assert_eq!(r.solutions, vec![vec![2]]);
        let r = search_equality(3, 2, 16).unwrap();
        assert!(r.solutions.iter().all(|js| js == &vec![3, 0]));
        assert!(r.has_trivial);
        let r = search_equality(4, 4, 32).unwrap();
        assert!(r.all_j1_at_least_s && r.has_trivial);
        assert_eq!(search_equality(3, 2, 7), Err(SeriesError::TruncationTooSmall { n: 7, needed: 8 }));
    }

    #[test]
    fn trace() {
        for s in 2..=4 {
            for r in 2..=4 {
                let (count, ok) = low_coefficient_trace(s, r).unwrap();
                assert!(count > 0 && ok, "s={s} r={r}");
            }
        }
    }
}
