//! Divisor functions and the picking sequences they induce.
//!
//! A divisor method hands the next turn to the agent minimising
//! `f(t_i) / w_i`. Scores are compared exactly whenever `f(t)` can be
//! written as `y^(1/k)` with rational `y` and a method-wide root `k`:
//! raising both scores to the `k`-th power preserves their order. The
//! remaining functions (power means with a non-integer exponent) fall back to
//! high-precision floating arithmetic when the configuration allows it.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::{Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::PickingSequence;
use crate::rational::{self, Rational};

/// Minimum mantissa size for the floating fallback.
pub const MIN_PRECISION_BITS: usize = 128;

/// How scores that cannot be compared exactly are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exactness {
    /// Reject functions whose scores cannot be compared exactly.
    pub exact_only: bool,
    /// Mantissa bits for the floating fallback; values below 128 are raised to 128.
    pub precision_bits: usize,
}

impl Default for Exactness {
    fn default() -> Self {
        Exactness {
            exact_only: true,
            precision_bits: MIN_PRECISION_BITS,
        }
    }
}

impl Exactness {
    pub fn allow_float(precision_bits: usize) -> Self {
        Exactness {
            exact_only: false,
            precision_bits: precision_bits.max(MIN_PRECISION_BITS),
        }
    }

    fn bits(&self) -> usize {
        self.precision_bits.max(MIN_PRECISION_BITS)
    }
}

/// Explicit values `f(0), f(1), ..` with an optional `f(t) = t + c` tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CustomTable {
    values: Vec<Rational>,
    tail_offset: Option<Rational>,
}

impl CustomTable {
    /// Checks `t <= f(t) <= t + 1` and strict monotonicity over the table and into the tail.
    pub fn new(values: Vec<Rational>, tail_offset: Option<Rational>) -> Result<Self> {
        if let Some(c) = &tail_offset {
            if c.is_negative() || c > &rational::one() {
                return Err(Error::arg("tail offset must lie in [0, 1]"));
            }
        }
        if values.is_empty() && tail_offset.is_none() {
            return Err(Error::arg("a custom divisor function needs values or a tail"));
        }
        for (t, v) in values.iter().enumerate() {
            let t = rational::from_usize(t);
            if v < &t || v > &(&t + rational::one()) {
                return Err(Error::arg(format!("f({t}) = {v} is outside [{t}, {t} + 1]")));
            }
        }
        for (t, pair) in values.windows(2).enumerate() {
            if pair[0] >= pair[1] {
                return Err(Error::arg(format!("f is not strictly increasing at t = {t}")));
            }
        }
        if let (Some(c), Some(last)) = (&tail_offset, values.last()) {
            if &(rational::from_usize(values.len()) + c) <= last {
                return Err(Error::arg("tail does not continue the table increasingly"));
            }
        }
        Ok(CustomTable { values, tail_offset })
    }

    /// `f(t) = t + low` for `t <= switch_at` and `t + high` afterwards.
    pub fn piecewise_offset(low: Rational, high: Rational, switch_at: usize) -> Result<Self> {
        let values = (0..=switch_at).map(|t| rational::from_usize(t) + &low).collect();
        CustomTable::new(values, Some(high))
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn tail_offset(&self) -> Option<&Rational> {
        self.tail_offset.as_ref()
    }

    fn eval(&self, t: u64) -> Result<Rational> {
        match self.values.get(t as usize) {
            Some(v) => Ok(v.clone()),
            None => match &self.tail_offset {
                Some(c) => Ok(Rational::from_integer(BigInt::from(t)) + c),
                None => Err(Error::arg(format!(
                    "custom divisor function is only defined for t < {} (asked for t = {t})",
                    self.values.len()
                ))),
            },
        }
    }
}

/// The function `f` of a divisor method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorFunction {
    /// `f(t) = t`
    Adams,
    /// `f(t) = t + 1`
    Jefferson,
    /// `f(t) = t + 1/2`
    Webster,
    /// `f(t) = sqrt(t (t + 1))`
    Hill,
    /// `f(t) = t (t + 1) / (t + 1/2)`
    Dean,
    /// `f(t) = t + c` with `c` in `[0, 1]`.
    Stationary(Rational),
    /// Weighted power mean `(w t^p + (1 - w)(t + 1)^p)^(1/p)`, or `t^w (t + 1)^(1 - w)` for `p = 0`;
    /// `f(0) = 0` whenever `p <= 0`.
    PowerMean { p: Rational, w: Rational },
    Custom(CustomTable),
}

/// `f(t)^k` for the method-wide root `k`, or a floating value.
#[derive(Debug, Clone)]
enum Evaluated {
    Power(Rational),
    Float(BigFloat),
}

/// A score `f(t) / w`, comparable with other keys of the same function.
#[derive(Debug, Clone)]
pub enum ScoreKey {
    /// `(f(t) / w)^k`.
    Exact(Rational),
    Approx(BigFloat),
}

impl ScoreKey {
    pub fn compare(&self, other: &ScoreKey) -> Result<Ordering> {
        match (self, other) {
            (ScoreKey::Exact(a), ScoreKey::Exact(b)) => Ok(a.cmp(b)),
            (ScoreKey::Approx(a), ScoreKey::Approx(b)) => match a.cmp(b) {
                Some(c) => Ok(c.cmp(&0)),
                None => Err(Error::Precision("floating score evaluated to NaN".into())),
            },
            _ => Err(Error::Invariant("mixed exact and floating scores".into())),
        }
    }
}

fn big(t: u64) -> BigInt {
    BigInt::from(t)
}

fn rat(t: u64) -> Rational {
    Rational::from_integer(big(t))
}

fn rational_pow(base: &Rational, exp: u32) -> Rational {
    Pow::pow(base, exp)
}

fn check_unit_interval(value: &Rational, what: &str) -> Result<()> {
    if value.is_negative() || value > &rational::one() {
        return Err(Error::arg(format!("{what} must lie in [0, 1], got {value}")));
    }
    Ok(())
}

impl DivisorFunction {
    /// The five traditional methods, in the customary order.
    pub fn traditional() -> [DivisorFunction; 5] {
        [
            DivisorFunction::Adams,
            DivisorFunction::Jefferson,
            DivisorFunction::Webster,
            DivisorFunction::Hill,
            DivisorFunction::Dean,
        ]
    }

    pub fn stationary(c: Rational) -> Result<Self> {
        check_unit_interval(&c, "stationary offset")?;
        Ok(DivisorFunction::Stationary(c))
    }

    pub fn power_mean(p: Rational, w: Rational) -> Result<Self> {
        check_unit_interval(&w, "power-mean weight")?;
        Ok(DivisorFunction::PowerMean { p, w })
    }

    pub fn name(&self) -> String {
        match self {
            DivisorFunction::Adams => "adams".into(),
            DivisorFunction::Jefferson => "jefferson".into(),
            DivisorFunction::Webster => "webster".into(),
            DivisorFunction::Hill => "hill".into(),
            DivisorFunction::Dean => "dean".into(),
            DivisorFunction::Stationary(c) => format!("stationary:{c}"),
            DivisorFunction::PowerMean { p, w } => format!("powermean:{p},{w}"),
            DivisorFunction::Custom(_) => "custom".into(),
        }
    }

    /// The root `k` with `f(t)^k` rational for every `t`, or `None` when no such root is known.
    pub fn exact_root(&self) -> Option<u32> {
        match self {
            DivisorFunction::Hill => Some(2),
            DivisorFunction::PowerMean { p, w } => {
                if p.is_zero() {
                    w.denom().to_u32()
                } else if p.is_integer() {
                    p.to_integer().abs().to_u32()
                } else {
                    None
                }
            }
            _ => Some(1),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact_root().is_some()
    }

    /// `f(t)^k` for the method's exact root `k`.
    fn power_value(&self, t: u64, root: u32) -> Result<Rational> {
        let value = match self {
            DivisorFunction::Adams => rat(t),
            DivisorFunction::Jefferson => rat(t + 1),
            DivisorFunction::Webster => rat(t) + rational::ratio(1, 2),
            DivisorFunction::Hill => rat(t * (t + 1)),
            DivisorFunction::Dean => Rational::new(big(2 * t * (t + 1)), big(2 * t + 1)),
            DivisorFunction::Stationary(c) => rat(t) + c,
            DivisorFunction::Custom(table) => table.eval(t)?,
            DivisorFunction::PowerMean { p, w } => {
                if t == 0 && !p.is_positive() {
                    Rational::zero()
                } else if p.is_zero() {
                    // (t^a (t+1)^(q-a)) with w = a/q
                    let a = w.numer().to_u32().expect("weight numerator fits u32");
                    rational_pow(&rat(t), a) * rational_pow(&rat(t + 1), root - a)
                } else {
                    let e = root;
                    let one_minus_w = rational::one() - w;
                    if p.is_positive() {
                        w * rational_pow(&rat(t), e) + one_minus_w * rational_pow(&rat(t + 1), e)
                    } else {
                        // f = M^(1/p) with p = -e, so f^e = 1/M where M = w t^-e + (1-w)(t+1)^-e.
                        let mean = w * rational_pow(&rat(t), e).recip()
                            + one_minus_w * rational_pow(&rat(t + 1), e).recip();
                        mean.recip()
                    }
                }
            }
        };
        let lower = rational_pow(&rat(t), root);
        let upper = rational_pow(&rat(t + 1), root);
        if value < lower || value > upper {
            return Err(Error::Invariant(format!(
                "{} violates t <= f(t) <= t + 1 at t = {t}",
                self.name()
            )));
        }
        Ok(value)
    }

    fn float_value(&self, t: u64, bits: usize, consts: &mut Consts) -> Result<BigFloat> {
        let DivisorFunction::PowerMean { p, w } = self else {
            return Err(Error::Invariant("float path reached for an exact function".into()));
        };
        // Rounded modes retry at ever higher precision when a power is exact.
        let rm = RoundingMode::None;
        let prec = bits + 64;
        if t == 0 && !p.is_positive() {
            return Ok(BigFloat::from_word(0, prec));
        }
        let pf = to_float(p, prec, consts);
        let wf = to_float(w, prec, consts);
        let one = BigFloat::from_word(1, prec);
        let t_f = BigFloat::from_u64(t, prec);
        let t1_f = BigFloat::from_u64(t + 1, prec);
        let tp = if t == 0 {
            BigFloat::from_word(0, prec)
        } else {
            t_f.pow(&pf, prec, rm, consts)
        };
        let t1p = t1_f.pow(&pf, prec, rm, consts);
        let mean = wf
            .mul(&tp, prec, rm)
            .add(&one.sub(&wf, prec, rm).mul(&t1p, prec, rm), prec, rm);
        let inv_p = one.div(&pf, prec, rm);
        let value = mean.pow(&inv_p, prec, rm, consts);
        if value.is_nan() {
            return Err(Error::Precision(format!("{} evaluated to NaN at t = {t}", self.name())));
        }
        Ok(value)
    }

    fn evaluate(&self, t: u64, exactness: &Exactness, consts: &mut Option<Consts>) -> Result<Evaluated> {
        match self.exact_root() {
            Some(root) => self.power_value(t, root).map(Evaluated::Power),
            None => {
                if exactness.exact_only {
                    return Err(Error::Precision(format!(
                        "{} cannot be compared exactly; disable exact-only mode to use the floating fallback",
                        self.name()
                    )));
                }
                let consts = consts_slot(consts)?;
                self.float_value(t, exactness.bits(), consts).map(Evaluated::Float)
            }
        }
    }

    /// Exact `f(t)` when it is rational.
    pub fn value(&self, t: u64) -> Result<Option<Rational>> {
        match self.exact_root() {
            Some(1) => self.power_value(t, 1).map(Some),
            _ => Ok(None),
        }
    }

    /// `f(t)^k` together with `k`, when exact.
    pub fn power_form(&self, t: u64) -> Result<Option<(Rational, u32)>> {
        match self.exact_root() {
            Some(root) => Ok(Some((self.power_value(t, root)?, root))),
            None => Ok(None),
        }
    }

    /// Floating approximation of `f(t)`, used for diagnostics and tests.
    pub fn approx(&self, t: u64) -> f64 {
        match self.power_form(t) {
            Ok(Some((v, root))) => {
                let v = v.to_f64().unwrap_or(f64::NAN);
                if root == 1 {
                    v
                } else {
                    v.powf(1.0 / root as f64)
                }
            }
            _ => {
                let mut consts = None;
                consts_slot(&mut consts)
                    .and_then(|c| self.float_value(t, MIN_PRECISION_BITS, c))
                    .ok()
                    .and_then(|v| v.to_string().parse::<f64>().ok())
                    .unwrap_or(f64::NAN)
            }
        }
    }
}

impl fmt::Display for DivisorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn consts_slot(slot: &mut Option<Consts>) -> Result<&mut Consts> {
    if slot.is_none() {
        *slot = Some(Consts::new().map_err(|e| Error::Precision(format!("float constants: {e:?}")))?);
    }
    Ok(slot.as_mut().expect("just initialised"))
}

fn to_float(value: &Rational, prec: usize, consts: &mut Consts) -> BigFloat {
    let rm = RoundingMode::None;
    let numer = BigFloat::parse(&value.numer().to_string(), Radix::Dec, prec, rm, consts);
    let denom = BigFloat::parse(&value.denom().to_string(), Radix::Dec, prec, rm, consts);
    numer.div(&denom, prec, rm)
}

/// Evaluates scores `f(t) / w` for one divisor function.
pub struct Scorer<'a> {
    f: &'a DivisorFunction,
    exactness: Exactness,
    root: Option<u32>,
    consts: Option<Consts>,
}

impl<'a> Scorer<'a> {
    pub fn new(f: &'a DivisorFunction, exactness: Exactness) -> Self {
        Scorer {
            f,
            exactness,
            root: f.exact_root(),
            consts: None,
        }
    }

    pub fn key(&mut self, t: u64, weight: &Rational) -> Result<ScoreKey> {
        if !weight.is_positive() {
            return Err(Error::arg("weights must be positive"));
        }
        match self.f.evaluate(t, &self.exactness, &mut self.consts)? {
            Evaluated::Power(value) => {
                let root = self.root.expect("power values come from exact functions");
                Ok(ScoreKey::Exact(value / rational_pow(weight, root)))
            }
            Evaluated::Float(value) => {
                let prec = self.exactness.bits() + 64;
                let consts = consts_slot(&mut self.consts)?;
                let w = to_float(weight, prec, consts);
                Ok(ScoreKey::Approx(value.div(&w, prec, RoundingMode::None)))
            }
        }
    }
}

/// Exact order of `f(t_a) / w_a` against `f(t_b) / w_b`.
pub fn compare_scores(
    f: &DivisorFunction,
    t_a: u64,
    w_a: &Rational,
    t_b: u64,
    w_b: &Rational,
    exactness: &Exactness,
) -> Result<Ordering> {
    let mut scorer = Scorer::new(f, *exactness);
    let a = scorer.key(t_a, w_a)?;
    let b = scorer.key(t_b, w_b)?;
    a.compare(&b)
}

pub(crate) fn check_weights(weights: &[Rational]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::arg("at least one agent is required"));
    }
    if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
        return Err(Error::arg(format!("weight of agent {} must be positive", i + 1)));
    }
    Ok(())
}

/// Turn order of the divisor method `f` for `weights.len()` agents and `m` items.
/// Ties go to the lowest agent index.
pub fn divisor_sequence(
    f: &DivisorFunction,
    weights: &[Rational],
    m: usize,
    exactness: &Exactness,
) -> Result<PickingSequence> {
    check_weights(weights)?;
    let mut scorer = Scorer::new(f, *exactness);
    let mut picks = vec![0u64; weights.len()];
    let mut keys = weights
        .iter()
        .map(|w| scorer.key(0, w))
        .collect::<Result<Vec<_>>>()?;
    let mut turns = Vec::with_capacity(m);
    for turn in 0..m {
        let mut best = 0;
        for i in 1..keys.len() {
            if keys[i].compare(&keys[best])? == Ordering::Less {
                best = i;
            }
        }
        turns.push(best);
        picks[best] += 1;
        if turn + 1 < m {
            keys[best] = scorer.key(picks[best], &weights[best])?;
        }
    }
    Ok(PickingSequence::new(turns))
}

/// Parses `adams|jefferson|webster|hill|dean|stationary:c|powermean:p,w`.
/// `custom:@file` is resolved by the caller, which owns file access.
pub fn parse_divisor_function(text: &str) -> Result<DivisorFunction> {
    let lower = text.trim().to_ascii_lowercase();
    let (head, arg) = match lower.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (lower.as_str(), None),
    };
    match (head, arg) {
        ("adams", None) => Ok(DivisorFunction::Adams),
        ("jefferson" | "dhondt" | "d'hondt", None) => Ok(DivisorFunction::Jefferson),
        ("webster" | "sainte-lague", None) => Ok(DivisorFunction::Webster),
        ("hill" | "huntington-hill", None) => Ok(DivisorFunction::Hill),
        ("dean", None) => Ok(DivisorFunction::Dean),
        ("stationary", Some(c)) => DivisorFunction::stationary(rational::parse_rational(c)?),
        ("powermean", Some(args)) => {
            let (p, w) = args
                .split_once(',')
                .ok_or_else(|| Error::arg("powermean expects `powermean:p,w`"))?;
            DivisorFunction::power_mean(rational::parse_rational(p)?, rational::parse_rational(w)?)
        }
        _ => Err(Error::arg(format!("unknown divisor method `{text}`"))),
    }
}

/// Parses a custom table document `{"values": [..], "tail_offset"?: c}`.
pub fn parse_custom_table(text: &str) -> Result<CustomTable> {
    let doc: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::parse("document", e.to_string()))?;
    let values = doc
        .get("values")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::parse("values", "expected an array of rationals"))?
        .iter()
        .enumerate()
        .map(|(t, v)| rational::from_json(v, &format!("values[{t}]")))
        .collect::<Result<Vec<_>>>()?;
    let tail = match doc.get("tail_offset") {
        None | Some(serde_json::Value::Null) => None,
        Some(v) => Some(rational::from_json(v, "tail_offset")?),
    };
    CustomTable::new(values, tail)
}
