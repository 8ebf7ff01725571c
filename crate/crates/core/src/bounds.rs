//! Exact big-integer evaluation of the size formulas and thresholds.
//!
//! Every threshold is a real-valued "n ≥ x" condition in closed form; it is
//! returned here as `ceil(x)`, which is equivalent for integer `n`. Nothing in
//! this module touches floating point.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{range, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    Binomial,
    Ekr,
    HiltonMilner,
    EllSize,
    BlpThreshold,
    MainThreshold,
    Tuza,
    KatonaStyle,
    SeparationCount,
}

/// An exact non-negative value tagged with the formula and parameters that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
    pub formula_id: FormulaId,
    pub params: BTreeMap<&'static str, i64>,
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

impl BoundValue {
    fn new(value: BigUint, formula_id: FormulaId, params: &[(&'static str, i64)]) -> Self {
        BoundValue { value, formula_id, params: params.iter().copied().collect() }
    }

    pub fn decimal(&self) -> String {
        self.value.to_str_radix(10)
    }
}

/// The earlier threshold whose constant is unspecified; kept as text only.
pub const PRIOR_THRESHOLD_FORMULA: &str =
    "n0(k,2) = 28k; n0(k,r) = C * k^(2(r+1)k) for 3 <= r < k (C unspecified); n0(k,k) = 2k-1";

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binom(a: i64, b: i64) -> BigUint {
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 1..=b {
        acc *= BigUint::from((a - b + i) as u64);
        acc /= BigUint::from(i as u64);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn signed(x: u64) -> i64 {
    i64::try_from(x).unwrap_or(i64::MAX)
}

pub fn binomial(a: i64, b: i64) -> BoundValue {
    BoundValue::new(binom(a, b), FormulaId::Binomial, &[("a", a), ("b", b)])
}

/// `C(n-1, k-1)`, for `n ≥ 2k > 0`.
pub fn ekr_bound(n: u64, k: u64) -> Result<BoundValue> {
    if k == 0 || n < 2 * k {
        return Err(range(format!("EKR bound needs n >= 2k > 0, got n = {n}, k = {k}")));
    }
    let (n, k) = (signed(n), signed(k));
    Ok(BoundValue::new(binom(n - 1, k - 1), FormulaId::Ekr, &[("n", n), ("k", k)]))
}

/// `C(n-1, k-1) - C(n-k-1, k-1) + 1`, for `n > 2k ≥ 4`.
pub fn hm_bound(n: u64, k: u64) -> Result<BoundValue> {
    if k < 2 || n <= 2 * k {
        return Err(range(format!("Hilton-Milner bound needs n > 2k >= 4, got n = {n}, k = {k}")));
    }
    let (n, k) = (signed(n), signed(k));
    let v = binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1u32;
    Ok(BoundValue::new(v, FormulaId::HiltonMilner, &[("n", n), ("k", k)]))
}

/// `Σ_{r ≤ i ≤ 2r-1} C(2r-1, i) C(n-2r+1, k-i)`, for `k ≥ r ≥ 1`, `n ≥ 2k`.
pub fn ell_size(n: u64, k: u64, r: u64) -> Result<BoundValue> {
    if r == 0 || r > k || n < 2 * k {
        return Err(range(format!("ell size needs k >= r >= 1 and n >= 2k, got n = {n}, k = {k}, r = {r}")));
    }
    let (n, k, r) = (signed(n), signed(k), signed(r));
    let v = (r..=2 * r - 1).map(|i| binom(2 * r - 1, i) * binom(n - 2 * r + 1, k - i)).sum();
    Ok(BoundValue::new(v, FormulaId::EllSize, &[("n", n), ("k", k), ("r", r)]))
}

/// The older threshold: `k⁴/3` for r = 2, `2k⁵` for r = 3, and
/// `((k+1) k^r 2^k)^(2^k) (2k-2r)^(k-r) / C(2r-1, r)` for r ≥ 4; rounded up.
pub fn blp_threshold(k: u64, r: u64) -> Result<BoundValue> {
    if r < 2 || r > k {
        return Err(range(format!("threshold needs 2 <= r <= k, got k = {k}, r = {r}")));
    }
    let kb = big(k);
    let v = match r {
        2 => ceil_div(&kb.pow(4), &big(3)),
        3 => big(2) * kb.pow(5),
        _ => {
            if k >= 32 {
                return Err(range(format!("2^k exponent too large for k = {k}")));
            }
            let exp = 1u32 << k;
            let base = big(k + 1) * kb.pow(r as u32) * big(2).pow(k as u32);
            let num = base.pow(exp) * big(2 * k - 2 * r).pow((k - r) as u32);
            ceil_div(&num, &binom(signed(2 * r - 1), signed(r)))
        }
    };
    Ok(BoundValue::new(v, FormulaId::BlpThreshold, &[("k", signed(k)), ("r", signed(r))]))
}

/// `2 (r+1)^r k C(2k-1, k) / C(2r-1, r)`, rounded up, for `4 ≤ r ≤ k-1`.
pub fn main_threshold(k: u64, r: u64) -> Result<BoundValue> {
    if r < 4 || r + 1 > k {
        return Err(range(format!("threshold needs 4 <= r <= k-1, got k = {k}, r = {r}")));
    }
    let num = big(2) * big(r + 1).pow(r as u32) * big(k) * binom(signed(2 * k - 1), signed(k));
    let v = ceil_div(&num, &binom(signed(2 * r - 1), signed(r)));
    Ok(BoundValue::new(v, FormulaId::MainThreshold, &[("k", signed(k)), ("r", signed(r))]))
}

/// `C(2k-1, k-1) + C(2k-4, k-2)`: the union bound for critical families of rank k.
pub fn tuza_bound(k: u64) -> BoundValue {
    let k = signed(k);
    BoundValue::new(binom(2 * k - 1, k - 1) + binom(2 * k - 4, k - 2), FormulaId::Tuza, &[("k", k)])
}

/// `C(2k-3, k-1) (2k-1)`: the weaker union bound from permutation counting.
pub fn katona_style_bound(k: u64) -> BoundValue {
    let k = signed(k);
    let v = binom(2 * k - 3, k - 1) * BigUint::from((2 * k - 1).max(0) as u64);
    BoundValue::new(v, FormulaId::KatonaStyle, &[("k", k)])
}

/// `2 n! (g-1)! (h-1)! / (g+h-1)!`: permutations of `[n]` separating a pair
/// `(G, H)` with `|G| = g`, `|H| = h`, `|G ∩ H| = 1`.
///
/// `g = h = 1` (so `G = H`) is rejected; the formula would exceed `n!` there.
pub fn separation_count(n: u64, g: u64, h: u64) -> Result<BoundValue> {
    if g == 0 || h == 0 || g + h - 1 > n {
        return Err(range(format!("separation count needs g, h >= 1 and g+h-1 <= n, got n = {n}, g = {g}, h = {h}")));
    }
    if g + h - 1 < 2 {
        return Err(range("separation count is degenerate for g = h = 1"));
    }
    let v = big(2) * factorial(n) * factorial(g - 1) * factorial(h - 1) / factorial(g + h - 1);
    Ok(BoundValue::new(v, FormulaId::SeparationCount, &[("n", signed(n)), ("g", signed(g)), ("h", signed(h))]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn holds(self, lhs: &BigUint, rhs: &BigUint) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

/// One exactly evaluated inequality `lhs relation rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub step: &'static str,
    /// Support size |X| the step was evaluated at, if it depends on it.
    pub support_size: Option<u64>,
    /// Level index (`i` or `p`) for steps quantified over levels.
    pub index: Option<u64>,
    #[serde(serialize_with = "decimal")]
    pub lhs: BigUint,
    pub relation: Relation,
    #[serde(serialize_with = "decimal")]
    pub rhs: BigUint,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainAuditReport {
    pub n: u64,
    pub k: u64,
    pub r: u64,
    pub steps: Vec<ChainStep>,
    pub passed: bool,
}

impl ChainAuditReport {
    pub fn failures(&self) -> impl Iterator<Item = &ChainStep> {
        self.steps.iter().filter(|s| !s.holds)
    }
}

struct Audit {
    steps: Vec<ChainStep>,
}

impl Audit {
    fn push(&mut self, step: &'static str, x: Option<u64>, index: Option<u64>, lhs: BigUint, relation: Relation, rhs: BigUint) {
        let holds = relation.holds(&lhs, &rhs);
        self.steps.push(ChainStep { step, support_size: x, index, lhs, relation, rhs, holds });
    }
}

/// Re-evaluates, in exact arithmetic, the closing chain of the upper-bound
/// argument for every support size `|X|` in `[2r+1, tuza_bound(k)]`.
///
/// With `T(i) = C(|X|-r, i-r) C(n-|X|, k-i)`, the steps are:
///
/// * `n >= k C(2k,k-1)`, `n >= (2k+1) C(2k,k-1)` and `tuza(k) <= C(2k,k-1)`;
/// * `T(i) > 2 T(i+1)` for `r+1 <= i < k`, and its closed form at `i = r+1`;
/// * `Σ_{i>=p} T(i) < 2 T(p)` for each `p > r`;
/// * `p^r T(p) > (p+1)^r T(p+1)`, directly and through the factor `(r/(r+1))^r`;
/// * `2 p^r T(p) <= 2 (r+1)^r (|X|-r) C(n-|X|, k-r-1)`;
/// * `C(n-|X|, k-r-1) <= C(n-2r, k-r-1)`;
/// * `2 (r+1)^r (|X|-r) C(n-2r, k-r-1) <= C(2r-1,r) C(n-2r+1, k-r)`;
/// * `C(2r-1,r) C(n-2r+1,k-r) < |L(n,k,r)|`.
///
/// Ratio conditions are cross-multiplied. Below the threshold the audit
/// still runs; the `n >= threshold` step then fails.
pub fn audit_inequality_chain(n: u64, k: u64, r: u64) -> Result<ChainAuditReport> {
    let threshold = main_threshold(k, r)?.value;
    let (ni, ki, ri) = (signed(n), signed(k), signed(r));
    let mut a = Audit { steps: Vec::new() };
    let c2k = binom(2 * ki, ki - 1);
    let tuza = tuza_bound(k).value;
    a.push("n_ge_main_threshold", None, None, big(n), Relation::Ge, threshold);
    a.push("tuza_le_binom_2k_km1", None, None, tuza.clone(), Relation::Le, c2k.clone());
    a.push("support_range_nonempty", None, None, big(2 * r + 1), Relation::Le, tuza.clone());
    a.push("n_ge_k_binom_2k_km1", None, None, big(n), Relation::Ge, big(k) * &c2k);
    a.push("n_ge_2kp1_binom_2k_km1", None, None, big(n), Relation::Ge, big(2 * k + 1) * &c2k);

    let leading = binom(2 * ri - 1, ri) * binom(ni - 2 * ri + 1, ki - ri);
    let rp1_pow = big(r + 1).pow(r as u32);
    let r_pow = big(r).pow(r as u32);
    let x_max: u64 = u64::try_from(&tuza).map_err(|_| range("support bound too large"))?;

    for x in (2 * r + 1)..=x_max {
        let xi = signed(x);
        let t = |i: i64| binom(xi - ri, i - ri) * binom(ni - xi, ki - i);
        let sx = Some(x);
        a.push("n_gt_2kp1_support", sx, None, big(n), Relation::Gt, big(2 * k + 1) * big(x));
        for i in ri + 1..ki {
            a.push("term_ratio_gt_2", sx, Some(i as u64), t(i), Relation::Gt, big(2) * t(i + 1));
        }
        for p in ri + 1..=ki {
            let tail: BigUint = (p..=ki).map(t).sum();
            a.push("level_sum_lt_twice_leading", sx, Some(p as u64), tail, Relation::Lt, big(2) * t(p));
        }
        if r + 2 <= k {
            // (2/(|X|-r-1)) ((n-|X|-k+r+2)/(k-r-1)) > 2
            let free = big(n + r + 2) - big(x + k).min(big(n + r + 2));
            a.push("ratio_at_rp1_gt_2", sx, None, free.clone(), Relation::Gt, big(x - r - 1) * big(k - r - 1));
            a.push("ratio_with_power_factor_gt_1", sx, None, &r_pow * big(2) * free, Relation::Gt, &rp1_pow * big(x - r - 1) * big(k - r - 1));
        }
        for p in ri + 1..ki {
            let pu = p as u64;
            a.push("level_weight_ratio_gt_1", sx, Some(pu), big(pu).pow(r as u32) * t(p), Relation::Gt, big(pu + 1).pow(r as u32) * t(p + 1));
        }
        let top = big(2) * &rp1_pow * big(x - r) * binom(ni - xi, ki - ri - 1);
        for p in ri + 1..=ki {
            let pu = p as u64;
            a.push("max_at_p_eq_rp1", sx, Some(pu), big(2) * big(pu).pow(r as u32) * t(p), Relation::Le, top.clone());
        }
        a.push("shift_support_to_2r", sx, None, binom(ni - xi, ki - ri - 1), Relation::Le, binom(ni - 2 * ri, ki - ri - 1));
        a.push(
            "below_ell_leading_term",
            sx,
            None,
            big(2) * &rp1_pow * big(x - r) * binom(ni - 2 * ri, ki - ri - 1),
            Relation::Le,
            leading.clone(),
        );
    }
    let ell = ell_size(n, k, r)?.value;
    a.push("leading_term_lt_ell_size", None, None, leading, Relation::Lt, ell);

    let passed = a.steps.iter().all(|s| s.holds);
    Ok(ChainAuditReport { n, k, r, steps: a.steps, passed })
}
