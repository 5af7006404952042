//! Checks the defining equations of a collective.
//!
//! Nine laws are checked: the monoid unit and associativity laws of the
//! aggregation, the two unit-cancellation readings of the distribution, the
//! three coassociativity equations relating binary distributions along the
//! two bracketings of a triple, and the two commutativity conditions.
//!
//! Checking is exhaustive over bounded enumerations or falsification-only
//! sampling with splittable per-case seeds. Identical `(handle, config)`
//! inputs always yield identical reports, including the counterexample: the
//! engine evaluates every case and keeps the enumeration-least failure.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::collective::CollectiveHandle;
use crate::error::{Error, Result};
use crate::seed::mix;
use crate::value::{Rational, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

/// Checking strategy: enumeration bound, sample count, base seed and the
/// tolerance applied to rational leaf comparisons.
#[derive(Clone, Debug)]
pub struct LawConfig {
    pub mode: Mode,
    pub bound: u32,
    pub samples: u32,
    pub seed: u64,
    pub tolerance: Rational,
}

impl Default for LawConfig {
    fn default() -> LawConfig {
        LawConfig {
            mode: Mode::Exhaustive,
            bound: 3,
            samples: 200,
            seed: 0,
            tolerance: Rational::zero(),
        }
    }
}

impl LawConfig {
    pub fn exhaustive(bound: u32) -> LawConfig {
        LawConfig {
            mode: Mode::Exhaustive,
            bound,
            ..LawConfig::default()
        }
    }

    pub fn sampled(samples: u32, seed: u64, size: u32) -> LawConfig {
        LawConfig {
            mode: Mode::Sampled,
            bound: size,
            samples,
            seed,
            ..LawConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LawId {
    MonoidUnit,
    MonoidAssoc,
    Eq1Left,
    Eq1Right,
    Eq2Left,
    Eq2Right,
    Eq3,
    CommAgg,
    CommDis,
}

impl LawId {
    pub const ALL: [LawId; 9] = [
        LawId::MonoidUnit,
        LawId::MonoidAssoc,
        LawId::Eq1Left,
        LawId::Eq1Right,
        LawId::Eq2Left,
        LawId::Eq2Right,
        LawId::Eq3,
        LawId::CommAgg,
        LawId::CommDis,
    ];

    /// The monoid laws plus the three cancellation equations: what makes the
    /// structure a collective at all (commutativity is extra).
    pub const DEFINING: [LawId; 7] = [
        LawId::MonoidUnit,
        LawId::MonoidAssoc,
        LawId::Eq1Left,
        LawId::Eq1Right,
        LawId::Eq2Left,
        LawId::Eq2Right,
        LawId::Eq3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LawId::MonoidUnit => "monoid-unit",
            LawId::MonoidAssoc => "monoid-assoc",
            LawId::Eq1Left => "eq1-left",
            LawId::Eq1Right => "eq1-right",
            LawId::Eq2Left => "eq2-left",
            LawId::Eq2Right => "eq2-right",
            LawId::Eq3 => "eq3",
            LawId::CommAgg => "comm-agg",
            LawId::CommDis => "comm-dis",
        }
    }

    pub fn from_str(s: &str) -> Option<LawId> {
        LawId::ALL.iter().copied().find(|l| l.as_str() == s)
    }

    fn ordinal(self) -> u64 {
        LawId::ALL.iter().position(|l| *l == self).unwrap() as u64
    }
}

impl core::fmt::Display for LawId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

/// The inputs of the first failing case together with the two values whose
/// equality the law demanded. Re-evaluating the law's two routes on these
/// inputs reproduces `expected` and `actual` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub inputs: Vec<(&'static str, Value)>,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawEntry {
    pub law: LawId,
    pub verdict: Verdict,
    pub cases_run: u64,
    pub counterexample: Option<Counterexample>,
}

impl LawEntry {
    fn skipped(law: LawId) -> LawEntry {
        LawEntry {
            law,
            verdict: Verdict::Skipped,
            cases_run: 0,
            counterexample: None,
        }
    }
}

/// Per-law verdicts with counterexamples. `fail` entries always carry a
/// counterexample whose inputs satisfy the law's preconditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub entries: Vec<LawEntry>,
}

impl LawReport {
    pub fn entry(&self, law: LawId) -> Option<&LawEntry> {
        self.entries.iter().find(|e| e.law == law)
    }

    pub fn verdict(&self, law: LawId) -> Option<Verdict> {
        self.entry(law).map(|e| e.verdict)
    }

    /// Overall pass: every non-skipped entry passed.
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.verdict != Verdict::Fail)
    }

    /// Pass restricted to the given laws.
    pub fn pass_for(&self, laws: &[LawId]) -> bool {
        self.entries
            .iter()
            .filter(|e| laws.contains(&e.law))
            .all(|e| e.verdict != Verdict::Fail)
    }
}

/// Outcome of one law case.
enum Case {
    Pass,
    Fail(Counterexample),
}

/// Accumulates cases for one law, keeping the first failure.
struct LawRun {
    law: LawId,
    cases: u64,
    failure: Option<Counterexample>,
}

impl LawRun {
    fn new(law: LawId) -> LawRun {
        LawRun {
            law,
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, case: Case) {
        self.cases += 1;
        if let Case::Fail(cx) = case {
            if self.failure.is_none() {
                self.failure = Some(cx);
            }
        }
    }

    fn finish(self) -> LawEntry {
        LawEntry {
            law: self.law,
            verdict: if self.failure.is_some() {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            cases_run: self.cases,
            counterexample: self.failure,
        }
    }
}

fn capability(handle: &CollectiveHandle, what: &'static str) -> Error {
    Error::CapabilityMissing {
        collective: String::from(handle.name()),
        capability: what,
    }
}

/// The values a law case draws on: in exhaustive mode the full bounded
/// enumeration, in sampled mode seeded generators.
struct Cases<'a> {
    handle: &'a CollectiveHandle,
    cfg: &'a LawConfig,
    pool: Vec<Value>,
}

impl<'a> Cases<'a> {
    fn new(handle: &'a CollectiveHandle, cfg: &'a LawConfig) -> Result<Cases<'a>> {
        let pool = match cfg.mode {
            Mode::Exhaustive => handle
                .enumerate_contributions(cfg.bound)
                .ok_or_else(|| capability(handle, "contribution enumeration"))?,
            Mode::Sampled => {
                // Probe for generator support up front so an unsupported
                // handle is a capability error, not a vacuous pass.
                if (0..8)
                    .filter_map(|i| handle.gen_contribution(mix(cfg.seed, i), cfg.bound))
                    .next()
                    .is_none()
                {
                    return Err(capability(handle, "contribution generator"));
                }
                Vec::new()
            }
        };
        Ok(Cases { handle, cfg, pool })
    }

    /// Runs `eval` over every case of `arity` contributions. In exhaustive
    /// mode that is the full `pool^arity` product in enumeration order; in
    /// sampled mode, `samples` independently seeded tuples.
    fn run(
        &self,
        law: LawId,
        arity: usize,
        eval: &mut dyn FnMut(&[Value], &mut LawRun),
    ) -> LawEntry {
        let mut run = LawRun::new(law);
        match self.cfg.mode {
            Mode::Exhaustive => {
                let n = self.pool.len();
                let mut idx = alloc::vec![0usize; arity];
                let total = n.checked_pow(arity as u32).unwrap_or(0);
                let mut tuple = Vec::with_capacity(arity);
                for flat in 0..total {
                    let mut rest = flat;
                    for slot in (0..arity).rev() {
                        idx[slot] = rest % n;
                        rest /= n;
                    }
                    tuple.clear();
                    tuple.extend(idx.iter().map(|i| self.pool[*i].clone()));
                    eval(&tuple, &mut run);
                }
            }
            Mode::Sampled => {
                let law_seed = mix(self.cfg.seed, law.ordinal());
                for i in 0..self.cfg.samples {
                    let case_seed = mix(law_seed, i as u64);
                    let mut tuple = Vec::with_capacity(arity);
                    let mut ok = true;
                    for slot in 0..arity {
                        match self
                            .handle
                            .gen_contribution(mix(case_seed, 1 + slot as u64), self.cfg.bound)
                        {
                            Some(v) => tuple.push(v),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        eval(&tuple, &mut run);
                    } else {
                        // Nothing generated for this case: vacuous.
                        run.record(Case::Pass);
                    }
                }
            }
        }
        run.finish()
    }

    /// The returns a case tests on aggregate `agg`: the full (bounded)
    /// enumeration in exhaustive mode, one generated return in sampled mode
    /// (`None` when `R[agg]` yields nothing — the case is vacuous).
    fn returns_on(&self, agg: &Value, case_seed: u64) -> Result<Vec<Value>> {
        match self.cfg.mode {
            Mode::Exhaustive => self
                .handle
                .enumerate_returns(agg, self.cfg.bound)
                .ok_or_else(|| capability(self.handle, "return enumeration")),
            Mode::Sampled => Ok(self
                .handle
                .gen_return(agg, mix(case_seed, R_SALT), self.cfg.bound)
                .into_iter()
                .collect()),
        }
    }
}

const R_SALT: u64 = 0x7265_7475_726e; // "return"

/// Checks Eq. (1): distributing against the neutral contribution is the
/// identity on the non-neutral member's returns.
pub fn check_unit_cancellation(
    handle: &CollectiveHandle,
    cfg: &LawConfig,
) -> Result<Vec<LawEntry>> {
    let cases = Cases::new(handle, cfg)?;
    let tol = &cfg.tolerance;
    let neutral = handle.neutral();
    let mut out = Vec::new();
    let mut err = None;

    let mut left = |tuple: &[Value], run: &mut LawRun| {
        let a = &tuple[0];
        let agg = match handle.aggregate(a, &neutral) {
            Ok(v) => v,
            Err(e) => {
                run.record(op_error_case(&[("a", a.clone())], e));
                return;
            }
        };
        let rs = match cases.returns_on(&agg, mix(run.cases, 11)) {
            Ok(rs) => rs,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        if rs.is_empty() {
            run.record(Case::Pass);
            return;
        }
        for r in &rs {
            match handle.distribute(a, &neutral, r) {
                Ok((share, _)) => run.record(expect_eq(
                    handle.eq_return(&share, r, tol),
                    alloc::vec![("a", a.clone()), ("r", r.clone())],
                    r.clone(),
                    share,
                )),
                Err(e) => run.record(op_error_case(
                    &[("a", a.clone()), ("r", r.clone())],
                    e,
                )),
            }
        }
    };
    out.push(cases.run(LawId::Eq1Left, 1, &mut left));
    if let Some(e) = err {
        return Err(e);
    }

    let mut err = None;
    let mut right = |tuple: &[Value], run: &mut LawRun| {
        let a = &tuple[0];
        let agg = match handle.aggregate(&neutral, a) {
            Ok(v) => v,
            Err(e) => {
                run.record(op_error_case(&[("a", a.clone())], e));
                return;
            }
        };
        let rs = match cases.returns_on(&agg, mix(run.cases, 13)) {
            Ok(rs) => rs,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        if rs.is_empty() {
            run.record(Case::Pass);
            return;
        }
        for r in &rs {
            match handle.distribute(&neutral, a, r) {
                Ok((_, share)) => run.record(expect_eq(
                    handle.eq_return(&share, r, tol),
                    alloc::vec![("a", a.clone()), ("r", r.clone())],
                    r.clone(),
                    share,
                )),
                Err(e) => run.record(op_error_case(
                    &[("a", a.clone()), ("r", r.clone())],
                    e,
                )),
            }
        }
    };
    out.push(cases.run(LawId::Eq1Right, 1, &mut right));
    if let Some(e) = err {
        return Err(e);
    }
    Ok(out)
}

/// Checks Eqs. (2)–(3): both composite paths through binary distributions
/// agree for every bracketing of a triple.
pub fn check_coassociativity(handle: &CollectiveHandle, cfg: &LawConfig) -> Result<Vec<LawEntry>> {
    let cases = Cases::new(handle, cfg)?;
    let tol = &cfg.tolerance;
    let mut out = Vec::new();

    for law in [LawId::Eq2Left, LawId::Eq2Right, LawId::Eq3] {
        let mut err = None;
        let mut eval = |tuple: &[Value], run: &mut LawRun| {
            let (a, b, c) = (&tuple[0], &tuple[1], &tuple[2]);
            let inputs = |r: &Value| {
                alloc::vec![
                    ("a", a.clone()),
                    ("b", b.clone()),
                    ("c", c.clone()),
                    ("r", r.clone()),
                ]
            };
            let (ab, bc) = match (handle.aggregate(a, b), handle.aggregate(b, c)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(e), _) | (_, Err(e)) => {
                    run.record(op_error_case(&inputs(&Value::Unit), e));
                    return;
                }
            };
            let abc = match handle.aggregate(&ab, c) {
                Ok(v) => v,
                Err(e) => {
                    run.record(op_error_case(&inputs(&Value::Unit), e));
                    return;
                }
            };
            let rs = match cases.returns_on(&abc, mix(run.cases, law.ordinal())) {
                Ok(rs) => rs,
                Err(e) => {
                    err = Some(e);
                    return;
                }
            };
            if rs.is_empty() {
                run.record(Case::Pass);
                return;
            }
            for r in &rs {
                let outcome = coassoc_case(handle, law, a, b, c, &ab, &bc, r, tol);
                run.record(match outcome {
                    Ok(None) => Case::Pass,
                    Ok(Some((expected, actual))) => Case::Fail(Counterexample {
                        inputs: inputs(r),
                        expected,
                        actual,
                    }),
                    Err(e) => op_error_case(&inputs(r), e),
                });
            }
        };
        out.push(cases.run(law, 3, &mut eval));
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(out)
}

/// Evaluates one coassociativity equation on one case. `Ok(None)` is a pass;
/// `Ok(Some((expected, actual)))` the two unequal routes.
#[allow(clippy::too_many_arguments)]
fn coassoc_case(
    handle: &CollectiveHandle,
    law: LawId,
    a: &Value,
    b: &Value,
    c: &Value,
    ab: &Value,
    bc: &Value,
    r: &Value,
    tol: &Rational,
) -> Result<Option<(Value, Value)>> {
    match law {
        LawId::Eq2Left => {
            // (a*b)/((a*b)*c) then a/(a*b)  ==  a/(a*(b*c))
            let (r_ab, _) = handle.distribute(ab, c, r)?;
            let (via_pair, _) = handle.distribute(a, b, &r_ab)?;
            let (direct, _) = handle.distribute(a, bc, r)?;
            Ok((!handle.eq_return(&direct, &via_pair, tol)).then_some((direct, via_pair)))
        }
        LawId::Eq2Right => {
            // (b*c)/(a*(b*c)) then c/(b*c)  ==  c/((a*b)*c)
            let (_, r_bc) = handle.distribute(a, bc, r)?;
            let (_, via_pair) = handle.distribute(b, c, &r_bc)?;
            let (_, direct) = handle.distribute(ab, c, r)?;
            Ok((!handle.eq_return(&direct, &via_pair, tol)).then_some((direct, via_pair)))
        }
        LawId::Eq3 => {
            // (a*b)/((a*b)*c) then b/(a*b)  ==  (b*c)/(a*(b*c)) then b/(b*c)
            let (r_ab, _) = handle.distribute(ab, c, r)?;
            let (_, via_left) = handle.distribute(a, b, &r_ab)?;
            let (_, r_bc) = handle.distribute(a, bc, r)?;
            let (via_right, _) = handle.distribute(b, c, &r_bc)?;
            Ok((!handle.eq_return(&via_left, &via_right, tol)).then_some((via_left, via_right)))
        }
        _ => unreachable!("not a coassociativity law"),
    }
}

/// Checks Eqs. (4)–(5). Eq. (5) compares the first member's share computed
/// with the pair in both orders, so it is only well-posed when Eq. (4)
/// holds; `comm-dis` is reported as skipped when `comm-agg` fails.
pub fn check_commutativity(handle: &CollectiveHandle, cfg: &LawConfig) -> Result<Vec<LawEntry>> {
    let cases = Cases::new(handle, cfg)?;
    let tol = &cfg.tolerance;

    let mut agg_eval = |tuple: &[Value], run: &mut LawRun| {
        let (a, b) = (&tuple[0], &tuple[1]);
        let inputs = alloc::vec![("a", a.clone()), ("b", b.clone())];
        match (handle.aggregate(a, b), handle.aggregate(b, a)) {
            (Ok(ab), Ok(ba)) => run.record(expect_eq(
                handle.eq_contribution(&ab, &ba, tol),
                inputs,
                ab,
                ba,
            )),
            (Err(e), _) | (_, Err(e)) => run.record(op_error_case(&inputs, e)),
        }
    };
    let comm_agg = cases.run(LawId::CommAgg, 2, &mut agg_eval);

    if comm_agg.verdict != Verdict::Pass {
        return Ok(alloc::vec![comm_agg, LawEntry::skipped(LawId::CommDis)]);
    }

    let mut err = None;
    let mut dis_eval = |tuple: &[Value], run: &mut LawRun| {
        let (a, b) = (&tuple[0], &tuple[1]);
        let ab = match handle.aggregate(a, b) {
            Ok(v) => v,
            Err(e) => {
                run.record(op_error_case(&[("a", a.clone()), ("b", b.clone())], e));
                return;
            }
        };
        let rs = match cases.returns_on(&ab, mix(run.cases, 17)) {
            Ok(rs) => rs,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        if rs.is_empty() {
            run.record(Case::Pass);
            return;
        }
        for r in &rs {
            let inputs = alloc::vec![("a", a.clone()), ("b", b.clone()), ("r", r.clone())];
            let first = handle.distribute(a, b, r).map(|(x, _)| x);
            let second = handle.distribute(b, a, r).map(|(_, y)| y);
            match (first, second) {
                (Ok(x), Ok(y)) => {
                    run.record(expect_eq(handle.eq_return(&x, &y, tol), inputs, x, y))
                }
                (Err(e), _) | (_, Err(e)) => run.record(op_error_case(&inputs, e)),
            }
        }
    };
    let comm_dis = cases.run(LawId::CommDis, 2, &mut dis_eval);
    if let Some(e) = err {
        return Err(e);
    }
    Ok(alloc::vec![comm_agg, comm_dis])
}

/// Checks the monoid laws of the aggregation: unit and associativity.
pub fn check_monoid_laws(handle: &CollectiveHandle, cfg: &LawConfig) -> Result<Vec<LawEntry>> {
    let cases = Cases::new(handle, cfg)?;
    let tol = &cfg.tolerance;
    let neutral = handle.neutral();

    let mut unit_eval = |tuple: &[Value], run: &mut LawRun| {
        let a = &tuple[0];
        let inputs = alloc::vec![("a", a.clone())];
        match (handle.aggregate(a, &neutral), handle.aggregate(&neutral, a)) {
            (Ok(l), Ok(r)) => {
                if !handle.eq_contribution(&l, a, tol) {
                    run.record(Case::Fail(Counterexample {
                        inputs,
                        expected: a.clone(),
                        actual: l,
                    }));
                } else {
                    run.record(expect_eq(
                        handle.eq_contribution(&r, a, tol),
                        inputs,
                        a.clone(),
                        r,
                    ));
                }
            }
            (Err(e), _) | (_, Err(e)) => run.record(op_error_case(&inputs, e)),
        }
    };
    let unit = cases.run(LawId::MonoidUnit, 1, &mut unit_eval);

    let mut assoc_eval = |tuple: &[Value], run: &mut LawRun| {
        let (a, b, c) = (&tuple[0], &tuple[1], &tuple[2]);
        let inputs = alloc::vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone())];
        let left = handle
            .aggregate(a, b)
            .and_then(|ab| handle.aggregate(&ab, c));
        let right = handle
            .aggregate(b, c)
            .and_then(|bc| handle.aggregate(a, &bc));
        match (left, right) {
            (Ok(l), Ok(r)) => run.record(expect_eq(
                handle.eq_contribution(&l, &r, tol),
                inputs,
                l,
                r,
            )),
            (Err(e), _) | (_, Err(e)) => run.record(op_error_case(&inputs, e)),
        }
    };
    let assoc = cases.run(LawId::MonoidAssoc, 3, &mut assoc_eval);

    Ok(alloc::vec![unit, assoc])
}

/// Runs all nine laws and aggregates the verdicts. Deterministic for a
/// fixed seed; overall pass iff every non-skipped law passes.
pub fn check_all(handle: &CollectiveHandle, cfg: &LawConfig) -> Result<LawReport> {
    let mut entries = Vec::with_capacity(9);
    entries.extend(check_monoid_laws(handle, cfg)?);
    entries.extend(check_unit_cancellation(handle, cfg)?);
    entries.extend(check_coassociativity(handle, cfg)?);
    entries.extend(check_commutativity(handle, cfg)?);
    Ok(LawReport { entries })
}

fn expect_eq(
    equal: bool,
    inputs: Vec<(&'static str, Value)>,
    expected: Value,
    actual: Value,
) -> Case {
    if equal {
        Case::Pass
    } else {
        Case::Fail(Counterexample {
            inputs,
            expected,
            actual,
        })
    }
}

/// An operation error inside a law case is itself a law failure (it means a
/// closure or validity invariant broke); the error text is recorded in
/// place of the unavailable value.
fn op_error_case(inputs: &[(&'static str, Value)], e: Error) -> Case {
    Case::Fail(Counterexample {
        inputs: inputs.to_vec(),
        expected: Value::sym("no-error"),
        actual: Value::Sym(alloc::format!("error: {e}")),
    })
}
