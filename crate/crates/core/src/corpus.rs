//! Built-in constructions, each a DSL document with a stated target, run
//! end to end: parse, build the state, integrate, compare, classify, and
//! invert with the solver.

use serde::Serialize;

use crate::dsl::{parse_document, render_element, Document};
use crate::entanglement::{classify, concurrence2, fidelity_up_to_phase, ClassificationReport};
use crate::error::{Error, Result};
use crate::qubit::QubitState;
use crate::weights::{integrate_with_weight, solve_weight};

/// Agreement bound for norms and fidelity.
pub const PHASE_TOL: f64 = 1e-9;
/// Component-wise bound for exact cases.
pub const EXACT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Exact,
    UpToGlobalPhase,
}

#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub name: String,
    pub anchor: String,
    pub comparison: Comparison,
    pub source: String,
    pub document: Document,
}

const M1: &str = "d t1', d t1";
const M2: &str = "d t1', d t1, d t2', d t2";
const M3: &str = "d t1', d t1, d t2', d t2, d t3', d t3";
const M4: &str = "d t1', d t1, d t2', d t2, d t3', d t3, d t4', d t4";

struct Spec {
    name: String,
    anchor: String,
    comparison: Comparison,
    state: String,
    weight: String,
    measure: &'static str,
    target: String,
}

fn spec(name: impl Into<String>, anchor: impl Into<String>, state: impl Into<String>, weight: impl Into<String>, measure: &'static str, target: impl Into<String>) -> Spec {
    Spec {
        name: name.into(),
        anchor: anchor.into(),
        comparison: Comparison::UpToGlobalPhase,
        state: state.into(),
        weight: weight.into(),
        measure,
        target: target.into(),
    }
}

fn exact(mut s: Spec) -> Spec {
    s.comparison = Comparison::Exact;
    s
}

/// `(plus, minus)` labels paired with `+1`, `-1`.
const SIGNS: [(&str, &str, &str, i32); 2] = [("plus", "+", "Plus", 1), ("minus", "-", "Minus", -1)];

fn tensor_power(ket: &str, n: usize) -> String {
    vec![ket; n].join(" (x) ")
}

fn specs() -> Vec<Spec> {
    let mut v = Vec::new();
    let tp = "(|1:t1> + |-1:t1>)";
    let tm = "(|1:t1> - |-1:t1>)";

    for (word, op, cap, s) in SIGNS {
        let neg = if s > 0 { "" } else { "-" };
        let nk = |k: i32| (k * s).to_string();
        let (same, other) = if s > 0 { ("", "−") } else { ("−", "") };
        v.push(exact(spec(
            format!("bell-diff-{word}"),
            format!("|θ⟩|{same}θ⟩ − |−θ⟩|{other}θ⟩ with weight {neg}θ*/(2√2) gives Ψ{op}"),
            format!("|1:t1> (x) |{}:t1> - |-1:t1> (x) |{}:t1>", nk(1), nk(-1)),
            format!("{neg}(1/(2*sqrt(2))) * t1'"),
            M1,
            format!("Psi{cap}"),
        )));
        v.push(spec(
            format!("bell-sum-{word}"),
            format!("|θ⟩|{same}θ⟩ + |−θ⟩|{other}θ⟩ with constant weight {neg}1/2 gives |00⟩"),
            format!("|1:t1> (x) |{}:t1> + |-1:t1> (x) |{}:t1>", nk(1), nk(-1)),
            format!("{neg}1/2"),
            M1,
            "|00>",
        ));
        v.push(spec(
            format!("bell-same-{word}"),
            format!("|{same}θ⟩|{same}θ⟩ with weight {neg}θ*/√2 stated to give Ψ−"),
            format!("|{}:t1> (x) |{}:t1>", nk(1), nk(1)),
            format!("({}1/sqrt(2)) * t1'", neg),
            M1,
            "PsiMinus",
        ));
        v.push(exact(spec(
            format!("theta-pm-{word}"),
            format!("|θ⟩₊|θ⟩₋ {op} |θ⟩₋|θ⟩₊ with weight θ*/(4√2) gives Ψ{op}"),
            format!("{tp} (x) {tm} {op} {tm} (x) {tp}"),
            "(1/(4*sqrt(2))) * t1'",
            M1,
            format!("Psi{cap}"),
        )));
        v.push(spec(
            format!("conj-phi-{word}"),
            format!("|θ*⟩|θ⟩ with weight ({neg}1/√2)exp({neg}θθ*) gives Φ{op}"),
            "|1:t1'> (x) |1:t1>",
            format!("({neg}1/sqrt(2)) * exp({neg}t1*t1')"),
            M1,
            format!("Phi{cap}"),
        ));
        v.push(spec(
            format!("conj-psi-{word}"),
            format!("|θ*⟩|θ⟩ with weight (θ* {op} θ)/√2 gives Ψ{op}"),
            "|1:t1'> (x) |1:t1>",
            format!("(1/sqrt(2)) * (t1' {op} t1)"),
            M1,
            format!("Psi{cap}"),
        ));
        v.push(spec(
            format!("conj-bell-like-{word}"),
            format!("|θ*⟩|θ⟩ with weight (e^{{iπ/4}}θ* {op} e^{{−iπ/4}}θ)/√2 gives the Bell-like {word} state"),
            "|1:t1'> (x) |1:t1>",
            format!("(1/sqrt(2)) * (exp(i*pi/4)*t1' {op} exp(-i*pi/4)*t1)"),
            M1,
            format!("BellLike{cap}"),
        ));
        let inner = if s > 0 { "-" } else { "+" };
        v.push(spec(
            format!("two-mode-phi-{word}"),
            format!("|θ₁⟩|θ₂⟩ with weight (θ₁*θ₁θ₂*θ₂ {inner} θ₁*θ₂*)/√2 gives Φ{op}"),
            "|1:t1> (x) |1:t2>",
            format!("(1/sqrt(2)) * (t1'*t1*t2'*t2 {inner} t1'*t2')"),
            M2,
            format!("Phi{cap}"),
        ));
        v.push(spec(
            format!("two-mode-psi-{word}"),
            format!("|θ₁⟩|θ₂⟩ with the single weight −(θ₁*θ₁θ₂* + θ₁*θ₂*θ₂)/√2 stated for Ψ{op}"),
            "|1:t1> (x) |1:t2>",
            "(-1/sqrt(2)) * (t1'*t1*t2' + t1'*t2'*t2)",
            M2,
            format!("Psi{cap}"),
        ));
        v.push(spec(
            format!("two-mode-bell-like-{word}"),
            format!("|θ₁⟩|θ₂⟩ with weight (e^{{iπ/4}}θ₁θ₁*θ₂* {op} e^{{−iπ/4}}θ₁*θ₂θ₂*)/√2 gives the Bell-like {word} state"),
            "|1:t1> (x) |1:t2>",
            format!("(1/sqrt(2)) * (exp(i*pi/4)*t1*t1'*t2' {op} exp(-i*pi/4)*t1'*t2*t2')"),
            M2,
            format!("BellLike{cap}"),
        ));
        let lambda = format!("|1:t1> (x) |1:t2> {op} |1:t2> (x) |1:t1>");
        v.push(spec(
            format!("lambda-psi-{word}"),
            format!("Λ{op} = |θ₁⟩|θ₂⟩ {op} |θ₂⟩|θ₁⟩ with weight (2/√2)θ₁* gives Ψ{op}"),
            lambda.clone(),
            "(2/sqrt(2)) * t1'",
            M2,
            format!("Psi{cap}"),
        ));
        v.push(spec(
            format!("lambda-00-{word}"),
            format!("Λ{op} with weight θ₁*θ₂*/2 stated to give |00⟩"),
            lambda.clone(),
            "(1/2) * t1'*t2'",
            M2,
            "|00>",
        ));
        v.push(spec(
            format!("lambda-11-{word}"),
            format!("Λ{op} with weight θ₁*θ₁θ₂*θ₂/2 stated to give |11⟩"),
            lambda,
            "(1/2) * t1'*t1*t2'*t2",
            M2,
            "|11>",
        ));
    }

    for n in 3..=5usize {
        v.push(spec(
            format!("w{n}"),
            format!("{n} copies of |θ⟩ with weight θ*/√{n} give W({n})"),
            tensor_power("|1:t1>", n),
            format!("(1/sqrt({n})) * t1'"),
            M1,
            format!("W{n}"),
        ));
        let terms: Vec<String> = (0..n)
            .map(|pos| (0..n).map(|i| if i == pos { tm } else { tp }).collect::<Vec<_>>().join(" (x) "))
            .collect();
        v.push(spec(
            format!("w-pm{n}"),
            format!("sum over positions of one |θ⟩₋ among |θ⟩₊ factors, weight θ*/(2^{n}√{n}), gives W({n})"),
            terms.join(" + "),
            format!("(1/({}*sqrt({n}))) * t1'", 1u32 << n),
            M1,
            format!("W{n}"),
        ));
    }

    for n in 3..=4usize {
        let state = (1..=n).map(|m| format!("|1:t{m}>")).collect::<Vec<_>>().join(" (x) ");
        let full = (1..=n).map(|m| format!("t{m}'*t{m}")).collect::<Vec<_>>().join("*");
        let stars = (1..=n).map(|m| format!("t{m}'")).collect::<Vec<_>>().join("*");
        v.push(spec(
            format!("ghz{n}"),
            format!("|θ₁⟩…|θ{n}⟩ with weight (Πθᵢ*θᵢ + Πθᵢ*)/√2 gives GHZ({n})"),
            state,
            format!("(1/sqrt(2)) * ({full} + {stars})"),
            if n == 3 { M3 } else { M4 },
            format!("GHZ{n}"),
        ));
    }

    let s3 = "|1:t1> (x) |1:t2> (x) |1:t3>";
    let s4 = "|1:t1> (x) |1:t2> (x) |1:t3> (x) |1:t4>";
    for (word, op, _, _) in SIGNS {
        v.push(spec(
            format!("bisep-0-psi23-{word}"),
            format!("three modes, qubit 1 in |0⟩, Ψ{op} on qubits 2,3"),
            s3,
            format!("(1/sqrt(2)) * (t1'*t1*t2'*t3*t3' {op} t1'*t1*t2*t2'*t3')"),
            M3,
            format!("(1/sqrt(2))|001> {op} (1/sqrt(2))|010>"),
        ));
        v.push(spec(
            format!("bisep-psi12-0-{word}"),
            format!("three modes, Ψ{op} on qubits 1,2, qubit 3 in |0⟩"),
            s3,
            format!("(1/sqrt(2)) * (t1*t1'*t2*t2'*t3*t3' {op} t1'*t1*t2'*t3*t3')"),
            M3,
            format!("(1/sqrt(2))|010> {op} (1/sqrt(2))|100>"),
        ));
        v.push(spec(
            format!("bisep-0-psi13-{word}"),
            format!("three modes, qubit 2 in |0⟩, Ψ{op} on qubits 1,3"),
            s3,
            format!("(1/sqrt(2)) * (t1'*t2*t2'*t3*t3' {op} t1'*t1*t2*t2'*t3')"),
            M3,
            format!("(1/sqrt(2))|001> {op} (1/sqrt(2))|100>"),
        ));
        v.push(spec(
            format!("bisep-0-phi23-{word}"),
            format!("three modes, qubit 1 in |0⟩, Φ{op} on qubits 2,3"),
            s3,
            format!("(1/sqrt(2)) * (t1*t1'*t2*t2'*t3*t3' {op} t1*t1'*t3'*t2')"),
            M3,
            format!("(1/sqrt(2))|000> {op} (1/sqrt(2))|011>"),
        ));
        v.push(spec(
            format!("bisep4-00-phi34-{word}"),
            format!("four modes, qubits 1,2 in |00⟩, Φ{op} on qubits 3,4"),
            s4,
            format!("(1/sqrt(2)) * (t1*t1'*t2*t2'*t3*t3'*t4*t4' {op} t1*t1'*t2*t2'*t3'*t4')"),
            M4,
            format!("(1/sqrt(2))|0000> {op} (1/sqrt(2))|0011>"),
        ));
    }
    v.push(spec(
        "bisep4-0-w3",
        "four modes, qubit 1 in |0⟩, W(3) on qubits 2,3,4",
        s4,
        "(1/sqrt(3)) * (t1*t1'*t2'*t3*t3'*t4*t4' + t1*t1'*t2*t2'*t3'*t4*t4' + t1*t1'*t2*t2'*t3*t3'*t4')",
        M4,
        "(1/sqrt(3))|0100> + (1/sqrt(3))|0010> + (1/sqrt(3))|0001>",
    ));
    v.push(spec(
        "bisep4-0-ghz3",
        "four modes, qubit 1 in |0⟩, GHZ(3) on qubits 2,3,4",
        s4,
        "(1/sqrt(2)) * (t1*t1'*t2*t2'*t3*t3'*t4*t4' + t1*t1'*t2'*t3'*t4')",
        M4,
        "(1/sqrt(2))|0000> + (1/sqrt(2))|0111>",
    ));
    v.push(spec(
        "bisep4-psi12-phi34",
        "four modes, Ψ+ on qubits 1,2 and Φ+ on qubits 3,4",
        s4,
        "(1/2) * (t1'*t2*t2'*t3*t3'*t4*t4' + t1*t1'*t2'*t3*t3'*t4*t4' + t1'*t2*t2'*t3'*t4' + t1*t1'*t2'*t3'*t4')",
        M4,
        "(1/2)|0100> + (1/2)|0111> + (1/2)|1000> + (1/2)|1011>",
    ));

    let fcs = [
        ("fcs-case1", "k = (1, −1, −1, −3), m = 2 gives Ψ+", "|1:t1> (x) |-1:t1> - |-1:t1> (x) |-3:t1>", "(1/(2*sqrt(2))) * t1'", "PsiPlus"),
        ("fcs-case2", "k = (1, −1, −1, 1), m = −2 gives Ψ−", "|1:t1> (x) |-1:t1> - |-1:t1> (x) |1:t1>", "(1/(-2*sqrt(2))) * t1'", "PsiMinus"),
        ("fcs-case3", "k = (1, 1, i, −i), m = √2 gives the Bell-like plus state", "|1:t1> (x) |1:t1> - |i:t1> (x) |-i:t1>", "(1/(sqrt(2)*sqrt(2))) * t1'", "BellLikePlus"),
        ("fcs-case4", "k = (1, −1, i, i), m = −√2 gives the Bell-like minus state", "|1:t1> (x) |-1:t1> - |i:t1> (x) |i:t1>", "(1/(-sqrt(2)*sqrt(2))) * t1'", "BellLikeMinus"),
        ("fcs-3-m1", "k = (3, −1, 1, −3), m = 2 gives Ψ+", "|3:t1> (x) |-1:t1> - |1:t1> (x) |-3:t1>", "(1/(2*sqrt(2))) * t1'", "PsiPlus"),
        ("fcs-1-m2", "k = (1, 1, −2, −2), m = 3 gives Ψ+", "|1:t1> (x) |1:t1> - |-2:t1> (x) |-2:t1>", "(1/(3*sqrt(2))) * t1'", "PsiPlus"),
        ("fcs-i-1", "k = (i, i, 1, 1), m = i − 1 gives Ψ+ (boson counterpart not maximal)", "|i:t1> (x) |i:t1> - |1:t1> (x) |1:t1>", "t1'/(sqrt(2)*(i - 1))", "PsiPlus"),
        ("fcs-plus-case1", "plus sign, k = (iπ/2, iπ/2, 1, 1), m = 1 + iπ/2 gives Ψ+", "|i*pi/2:t1> (x) |i*pi/2:t1> + |1:t1> (x) |1:t1>", "(1/((1 + i*pi/2)*sqrt(2))) * t1'", "PsiPlus"),
    ];
    for (name, anchor, state, weight, target) in fcs {
        v.push(spec(name, format!("coherent quad {anchor}"), state, weight, M1, target));
    }
    v.push(spec(
        "psi-prime",
        "(|θ⟩₊|θ⟩₋ + |θ⟩₋|θ⟩₊)/√2 with weight θ*/4 gives Ψ+",
        format!("(1/sqrt(2)) * ({tp} (x) {tm} + {tm} (x) {tp})"),
        "(1/4) * t1'",
        M1,
        "PsiPlus",
    ));
    v
}

/// Every built-in case, sorted by name.
pub fn cases() -> Vec<CorpusCase> {
    let mut out: Vec<CorpusCase> = specs()
        .into_iter()
        .map(|s| {
            let source = format!(
                "state: {}\nweight: {}\nmeasure: {}\ntarget: {}\n",
                s.state, s.weight, s.measure, s.target
            );
            let document = parse_document(&source).unwrap_or_else(|e| panic!("corpus case {}: {e}", s.name));
            CorpusCase {
                name: s.name,
                anchor: s.anchor,
                comparison: s.comparison,
                source,
                document,
            }
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Case-insensitive glob with `*` and `?`.
pub fn glob_match(pattern: &str, name: &str) -> bool {
    let p: Vec<char> = pattern.to_lowercase().chars().collect();
    let n: Vec<char> = name.to_lowercase().chars().collect();
    let (mut pi, mut ni) = (0, 0);
    let mut star: Option<(usize, usize)> = None;
    while ni < n.len() {
        if pi < p.len() && (p[pi] == '?' || p[pi] == n[ni]) {
            pi += 1;
            ni += 1;
        } else if pi < p.len() && p[pi] == '*' {
            star = Some((pi, ni));
            pi += 1;
        } else if let Some((sp, sn)) = star {
            pi = sp + 1;
            ni = sn + 1;
            star = Some((sp, sn + 1));
        } else {
            return false;
        }
    }
    p[pi..].iter().all(|c| *c == '*')
}

pub fn select(filter: Option<&str>) -> Result<Vec<CorpusCase>> {
    let all = cases();
    let Some(pattern) = filter else {
        return Ok(all);
    };
    let picked: Vec<CorpusCase> = all.into_iter().filter(|c| glob_match(pattern, &c.name)).collect();
    if picked.is_empty() {
        return Err(Error::NoCaseMatches(pattern.to_string()));
    }
    Ok(picked)
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: String,
    pub anchor: String,
    pub comparison: Comparison,
    pub passed: bool,
    pub fidelity: f64,
    pub phase: f64,
    pub achieved_norm: f64,
    pub target_norm: f64,
    /// Largest component-wise deviation from the target.
    pub deviation: f64,
    /// Solver residual for this state and target.
    pub residual: f64,
    /// Fidelity of the solver's particular weight re-integrated.
    pub solver_fidelity: f64,
    pub solver_weight: String,
    pub null_space_dim: usize,
    pub achieved: QubitState,
    pub target: QubitState,
    pub classification: Option<ClassificationReport>,
    pub concurrence: Option<f64>,
    pub notes: Vec<String>,
}

impl CaseResult {
    pub fn solver_round_trip(&self) -> bool {
        self.residual < PHASE_TOL && self.solver_fidelity >= 1.0 - PHASE_TOL
    }
}

fn match_up_to_phase(u: &QubitState, v: &QubitState) -> (f64, f64) {
    fidelity_up_to_phase(u, v).unwrap_or((0.0, 0.0))
}

pub fn run_case(case: &CorpusCase) -> Result<CaseResult> {
    let d = &case.document;
    let state = d.grassmann_state()?;
    let weight = d.weight_element()?;
    let measure = d.effective_measure();
    let target = d.target_state()?;
    let achieved = integrate_with_weight(&weight, &state, &measure)?;

    let (fidelity, phase) = match_up_to_phase(&achieved, &target);
    let (an, tn) = (achieved.norm(), target.norm());
    let deviation = achieved.max_deviation(&target);
    let phase_ok = (an - tn).abs() <= PHASE_TOL && fidelity >= 1.0 - PHASE_TOL;
    let passed = match case.comparison {
        Comparison::UpToGlobalPhase => phase_ok,
        Comparison::Exact => phase_ok && deviation <= EXACT_TOL,
    };

    let solution = solve_weight(&state, &target, &measure)?;
    let re = integrate_with_weight(&solution.particular, &state, &measure)?;
    let solver_fidelity = if (re.norm() - tn).abs() <= PHASE_TOL {
        match_up_to_phase(&re, &target).0
    } else {
        0.0
    };

    let mut notes = Vec::new();
    if passed && phase.abs() > PHASE_TOL {
        notes.push(format!("matched with global phase {phase:.6}"));
    }
    if !passed {
        notes.push(format!("achieved {achieved}"));
        if phase_ok {
            notes.push(format!("component deviation {deviation:.3e}"));
        } else if fidelity >= 1.0 - PHASE_TOL {
            notes.push(format!("norm {an:.6} vs {tn:.6}"));
        } else {
            notes.push(format!("fidelity {fidelity:.6}"));
        }
    }
    if solution.residual < PHASE_TOL {
        if !passed {
            notes.push(format!("solver weight {}", render_element(&solution.particular)));
        }
    } else {
        notes.push(format!("target unreachable from this state (residual {:.6})", solution.residual));
    }

    let classification = if (2..=8).contains(&achieved.qubits()) && an > PHASE_TOL {
        Some(classify(&achieved)?)
    } else {
        None
    };
    if let Some(c) = &classification {
        let named = c.named_match.as_ref().map_or(String::new(), |m| format!(", matches {}", m.name));
        notes.push(format!("{}{named}", c.category));
    }
    let concurrence = if achieved.qubits() == 2 && an > PHASE_TOL {
        Some(concurrence2(&achieved)?)
    } else {
        None
    };
    if let Some(cv) = concurrence {
        notes.push(format!("concurrence {cv:.9}"));
    }

    Ok(CaseResult {
        name: case.name.clone(),
        anchor: case.anchor.clone(),
        comparison: case.comparison,
        passed,
        fidelity,
        phase,
        achieved_norm: an,
        target_norm: tn,
        deviation,
        residual: solution.residual,
        solver_fidelity,
        solver_weight: render_element(&solution.particular),
        null_space_dim: solution.null_space.len(),
        achieved,
        target,
        classification,
        concurrence,
        notes,
    })
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub cases: Vec<CaseResult>,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Summary {
            passed: usize,
            failed: usize,
        }
        #[derive(Serialize)]
        struct Case<'a> {
            name: &'a str,
            status: &'a str,
            fidelity: f64,
            phase: f64,
            residual: f64,
            anchor: &'a str,
            notes: String,
        }
        #[derive(Serialize)]
        struct Report<'a> {
            summary: Summary,
            cases: Vec<Case<'a>>,
        }
        let report = Report {
            summary: Summary {
                passed: self.passed(),
                failed: self.failed(),
            },
            cases: self
                .cases
                .iter()
                .map(|c| Case {
                    name: &c.name,
                    status: if c.passed { "pass" } else { "fail" },
                    fidelity: round(c.fidelity),
                    phase: round(c.phase),
                    residual: round(c.residual),
                    anchor: &c.anchor,
                    notes: c.notes.join("; "),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&report).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out += &format!(
                "{:<26} {}  fidelity={:.12} phase={:+.6} residual={:.3e}  [{}]  {}\n",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.fidelity,
                c.phase,
                c.residual,
                c.anchor,
                c.notes.join("; ")
            );
        }
        out += &format!("summary: {} passed, {} failed\n", self.passed(), self.failed());
        out
    }
}

/// Rounds to 12 significant digits so reports do not depend on last-bit noise.
fn round(x: f64) -> f64 {
    crate::dsl::format_real(x).parse().unwrap_or(x)
}

pub fn run_corpus(filter: Option<&str>) -> Result<CorpusReport> {
    let cases = select(filter)?;
    let results = cases.iter().map(run_case).collect::<Result<Vec<_>>>()?;
    Ok(CorpusReport { cases: results })
}
