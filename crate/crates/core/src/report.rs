//! Commands and their reports.
//!
//! A [`Report`] is plain data with a stable, versioned JSON form. Every
//! rational is written as a `"p/q"` string. Apart from `duration_ms`, the
//! report is a function of the input file and the options.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::ce::{CeDifferential, JacobiViolation, LieAlgebra};
use crate::cohomology::Cohomology;
use crate::equivariant::{check_equivariance, fixed_subcomplex, EquivarianceFailure, Subcomplex};
use crate::error::{Error, Result};
use crate::exterior::ExteriorForm;
use crate::file::AlgebraFile;
use crate::scalar::{self, Scalar};
use crate::symplectic::{
    self, check_symplectic_form, csymplectic_cohomology_check, SearchConfig, SearchPlan, StrategyRegistry,
    SymplecticVerdict, TopPowerPolynomial,
};

pub const SCHEMA: &str = "cesymp-report";
pub const SCHEMA_VERSION: u32 = 1;

pub fn serialize_scalars<S: Serializer>(values: &[Scalar], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(values.iter().map(scalar::format))
}

fn strings(values: &[Scalar]) -> Vec<String> {
    values.iter().map(scalar::format).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Validate,
    Betti,
    Symplectic,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Betti => "betti",
            Command::Symplectic => "symplectic",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunOptions {
    /// Restrict to the subcomplex fixed by the action.
    pub invariant: bool,
    pub seed: u64,
    pub search: Vec<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            invariant: false,
            seed: 0,
            search: symplectic::search::DEFAULT_PLAN.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin,
    File,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputInfo {
    pub name: String,
    pub source: Source,
    pub digest: String,
    pub hull_datum: bool,
    pub action_generators: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: u32,
    pub command: Command,
    pub input: InputInfo,
    pub options: RunOptions,
    pub dimension: usize,
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<Validation>,
    pub complexes: Vec<ComplexReport>,
    pub duration_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Validation {
    pub jacobi: JacobiCheck,
    pub d_squared: DSquaredCheck,
    pub equivariance: EquivarianceCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiCheck {
    pub ok: bool,
    pub violations: Vec<JacobiViolation>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DSquaredCheck {
    pub ok: bool,
    /// Lowest degree k with `d_{k+1} d_k != 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failing_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivarianceCheck {
    /// False when Jacobi or d² already failed.
    pub checked: bool,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl Validation {
    pub fn ok(&self) -> bool {
        self.jacobi.ok && self.d_squared.ok && self.equivariance.ok
    }

    pub fn exit_code(&self) -> i32 {
        if !self.jacobi.ok || !self.d_squared.ok {
            2
        } else if !self.equivariance.ok {
            3
        } else {
            0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Full,
    Invariant,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub cochains: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub betti: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerCheck {
    pub from_betti: i64,
    pub from_cochains: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexReport {
    pub kind: ComplexKind,
    pub degrees: Vec<DegreeRow>,
    pub betti: Vec<usize>,
    pub euler: EulerCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<SymplecticReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermJson {
    pub coefficient: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormJson {
    pub text: String,
    pub terms: Vec<TermJson>,
}

impl FormJson {
    pub fn new(form: &ExteriorForm) -> Self {
        let basis = form.basis();
        FormJson {
            text: form.to_string(),
            terms: form
                .terms()
                .map(|(blade, c)| TermJson {
                    coefficient: scalar::format(c),
                    generators: blade.indices().map(|i| basis.name(i).to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonomialJson {
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolynomialJson {
    pub variables: usize,
    pub degree: usize,
    pub monomials_examined: u128,
    pub identically_zero: bool,
    pub nonzero_terms: Vec<MonomialJson>,
    pub text: String,
}

impl PolynomialJson {
    pub fn new(p: &TopPowerPolynomial) -> Self {
        PolynomialJson {
            variables: p.variables(),
            degree: p.degree(),
            monomials_examined: p.monomials_examined(),
            identically_zero: p.is_identically_zero(),
            nonzero_terms: p
                .terms()
                .map(|(e, c)| MonomialJson {
                    coefficient: scalar::format(c),
                    exponents: e.clone(),
                })
                .collect(),
            text: p.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessJson {
    pub form: FormJson,
    pub coefficients: Vec<String>,
    pub strategy: &'static str,
    /// Volume coefficient of ωⁿ from repeated wedge products.
    pub certificate: String,
    pub closed: bool,
    pub in_subcomplex: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyCheckJson {
    pub betti_two: usize,
    pub top_betti: usize,
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<FormJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_class: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictJson {
    Symplectic,
    NotSymplectic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymplecticReport {
    pub verdict: VerdictJson,
    pub closed_two_forms: Vec<FormJson>,
    /// Volume coefficient of `(Σ cᵢ ωᵢ)ⁿ` over the closed 2-forms above.
    pub polynomial: PolynomialJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof: Option<String>,
    pub cohomology_check: CohomologyCheckJson,
    pub conclusion: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Exit status for a report that was produced; failures that abort a
    /// command map through [`exit_code`].
    pub fn exit_code(&self) -> i32 {
        self.validation.as_ref().map_or(0, Validation::exit_code)
    }

    pub fn complex(&self, kind: ComplexKind) -> Option<&ComplexReport> {
        self.complexes.iter().find(|c| c.kind == kind)
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Jacobi(_) | Error::NotALieAlgebra { .. } | Error::NotACocomplex { .. } => 2,
        Error::NotEquivariant { .. } | Error::NotInvertible { .. } | Error::ActionSize { .. } => 3,
        Error::OddDimension(_) => 4,
        _ => 1,
    }
}

pub fn run(command: Command, file: &AlgebraFile, source: Source, options: &RunOptions) -> Result<Report> {
    let start = Instant::now();
    let basis = file.basis()?;
    let mut report = Report {
        schema: SCHEMA,
        version: SCHEMA_VERSION,
        command,
        input: InputInfo {
            name: file.name.clone(),
            source,
            digest: file.digest(),
            hull_datum: file.hull_datum,
            action_generators: file.action_generators.len(),
        },
        options: options.clone(),
        dimension: basis.dim(),
        generators: basis.names().to_vec(),
        validation: None,
        complexes: Vec::new(),
        duration_ms: 0,
    };
    let plan = SearchPlan::from_names(
        &StrategyRegistry::with_defaults(),
        &options.search,
        &SearchConfig { seed: options.seed },
    )?;

    match command {
        Command::Validate => {
            report.validation = Some(validate(file)?);
        }
        Command::Betti | Command::Symplectic => {
            let d = Arc::new(CeDifferential::new(&file.algebra_unchecked()?)?);
            let (kind, complex) = select(file, &d, options.invariant)?;
            let mut section = complex_report(kind, &complex)?;
            if command == Command::Symplectic {
                section.symplectic = Some(symplectic_report(file, kind, &complex, &plan)?);
            }
            report.complexes.push(section);
        }
        Command::Report => {
            let validation = validate(file)?;
            let ok = validation.ok();
            report.validation = Some(validation);
            if ok {
                let d = Arc::new(CeDifferential::new(&file.algebra_unchecked()?)?);
                let mut kinds = vec![select(file, &d, false)?];
                if !file.action_generators.is_empty() {
                    kinds.push(select(file, &d, true)?);
                }
                for (kind, complex) in kinds {
                    let mut section = complex_report(kind, &complex)?;
                    if complex.top_degree() % 2 == 0 {
                        section.symplectic = Some(symplectic_report(file, kind, &complex, &plan)?);
                    } else {
                        section.note = Some(format!(
                            "symplectic check skipped: odd dimension {}",
                            complex.top_degree()
                        ));
                    }
                    report.complexes.push(section);
                }
            }
        }
    }
    report.duration_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Jacobi, then d², then equivariance. Each later check only runs when the
/// earlier ones pass.
pub fn validate(file: &AlgebraFile) -> Result<Validation> {
    let algebra: LieAlgebra = file.algebra_unchecked()?;
    let violations = algebra.jacobi_check();
    let jacobi = JacobiCheck {
        ok: violations.is_empty(),
        violations,
    };
    let d = CeDifferential::build_unchecked(&algebra);
    let first = if jacobi.ok { d.first_nonzero_square() } else { None };
    let d_squared = DSquaredCheck {
        ok: jacobi.ok && first.is_none(),
        first_failing_degree: first,
    };
    let equivariance = if jacobi.ok && d_squared.ok {
        match check_equivariance(&d, &file.action()) {
            Ok(()) => EquivarianceCheck {
                checked: true,
                ok: true,
                failure: None,
            },
            Err(failure) => EquivarianceCheck {
                checked: true,
                ok: false,
                failure: Some(describe_failure(&failure, d.dim())),
            },
        }
    } else {
        EquivarianceCheck {
            checked: false,
            ok: false,
            failure: None,
        }
    };
    Ok(Validation {
        jacobi,
        d_squared,
        equivariance,
    })
}

fn describe_failure(failure: &EquivarianceFailure, n: usize) -> String {
    match failure {
        EquivarianceFailure::DoesNotCommute {
            generator,
            degree,
            residual,
        } => {
            let nonzero = (0..residual.rows())
                .flat_map(|i| (0..residual.cols()).map(move |j| (i, j)))
                .filter(|&(i, j)| !residual[(i, j)].is_zero())
                .count();
            format!(
                "action generator {generator} does not commute with d in degree {degree} ({nonzero} nonzero residual entries)"
            )
        }
        other => other.clone().into_error(n).to_string(),
    }
}

fn select(file: &AlgebraFile, d: &Arc<CeDifferential>, invariant: bool) -> Result<(ComplexKind, Subcomplex)> {
    if invariant {
        Ok((ComplexKind::Invariant, fixed_subcomplex(d, &file.action())?))
    } else {
        Ok((ComplexKind::Full, Subcomplex::full(d)))
    }
}

fn complex_report(kind: ComplexKind, complex: &Subcomplex) -> Result<ComplexReport> {
    let cohomology = Cohomology::compute(complex)?;
    let result = cohomology.result();
    let degrees = result
        .degrees()
        .iter()
        .enumerate()
        .map(|(k, h)| DegreeRow {
            degree: k,
            cochains: h.cochains,
            cycles: h.cycles,
            boundaries: h.boundaries,
            betti: h.betti,
        })
        .collect();
    let from_cochains = result
        .cochain_dims()
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();
    Ok(ComplexReport {
        kind,
        degrees,
        betti: result.betti_numbers(),
        euler: EulerCheck {
            from_betti: result.euler_characteristic(),
            from_cochains,
        },
        symplectic: None,
        note: None,
    })
}

fn symplectic_report(
    file: &AlgebraFile,
    kind: ComplexKind,
    complex: &Subcomplex,
    plan: &SearchPlan,
) -> Result<SymplecticReport> {
    let decision = symplectic::decide(complex, plan)?;
    let cohomology = Cohomology::compute(complex)?;
    let check = csymplectic_cohomology_check(&cohomology, plan)?;
    assert!(
        !check.exists() || decision.is_symplectic(),
        "a cohomology-level witness forces a cochain-level one"
    );

    let (verdict, witness, proof) = match &decision.verdict {
        SymplecticVerdict::Symplectic {
            witness,
            coefficients,
            certificate,
            strategy,
        } => {
            let form_check = check_symplectic_form(complex, witness)?;
            let json = WitnessJson {
                form: FormJson::new(witness),
                coefficients: strings(coefficients),
                strategy,
                certificate: scalar::format(certificate),
                closed: form_check.closed,
                in_subcomplex: form_check.in_subcomplex,
            };
            (VerdictJson::Symplectic, Some(json), None)
        }
        SymplecticVerdict::NotSymplectic => {
            let p = &decision.polynomial;
            let proof = format!(
                "all {} coefficients of the degree-{} polynomial in {} variables vanish, so omega^{} = 0 for every closed 2-form",
                p.monomials_examined(),
                p.degree(),
                p.variables(),
                p.degree()
            );
            (VerdictJson::NotSymplectic, None, Some(proof))
        }
    };

    let cohomology_check = CohomologyCheckJson {
        betti_two: check.betti_two,
        top_betti: check.top_betti,
        exists: check.exists(),
        class: check.witness.as_ref().map(|w| strings(&w.class.coordinates)),
        representative: check.witness.as_ref().map(|w| FormJson::new(&w.representative)),
        top_class: check.witness.as_ref().map(|w| strings(&w.top_class.coordinates)),
    };

    Ok(SymplecticReport {
        verdict,
        closed_two_forms: decision.closed_two_forms.iter().map(FormJson::new).collect(),
        polynomial: PolynomialJson::new(&decision.polynomial),
        witness,
        proof,
        cohomology_check,
        conclusion: conclusion(file, kind, decision.is_symplectic()),
    })
}

fn conclusion(file: &AlgebraFile, kind: ComplexKind, symplectic: bool) -> String {
    let acting = !file.action_generators.is_empty();
    let scope = match (kind, acting) {
        (ComplexKind::Invariant, true) => "closed 2-form fixed by the action",
        _ => "closed left-invariant 2-form",
    };
    let mut text = if symplectic {
        format!("symplectic: there is a {scope} with nonzero top power")
    } else {
        format!("no invariant symplectic form: every {scope} has vanishing top power")
    };
    let describes_manifold = file.hull_datum && (kind == ComplexKind::Invariant || !acting);
    if describes_manifold {
        text.push_str(if symplectic {
            "; the standard manifold is symplectic"
        } else {
            "; the standard manifold is not c-symplectic, hence not symplectic"
        });
    }
    text
}

/// Human-readable rendering.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} (dimension {}, {})",
        report.command.name(),
        report.input.name,
        report.dimension,
        report.input.digest
    );
    let _ = writeln!(out, "generators: {}", report.generators.join(" "));
    if let Some(v) = &report.validation {
        let _ = writeln!(out, "jacobi: {}", status(v.jacobi.ok));
        for violation in &v.jacobi.violations {
            let (i, j, k) = violation.triple;
            let _ = writeln!(
                out,
                "  violated at ({}, {}, {}): residual [{}]",
                report.generators[i],
                report.generators[j],
                report.generators[k],
                strings(&violation.residual).join(", ")
            );
        }
        match v.d_squared.first_failing_degree {
            Some(k) => {
                let _ = writeln!(out, "d^2 = 0: fail (degree {k})");
            }
            None => {
                let _ = writeln!(out, "d^2 = 0: {}", if v.jacobi.ok { "ok" } else { "not checked" });
            }
        }
        let eq = if !v.equivariance.checked {
            "not checked".to_string()
        } else if v.equivariance.ok {
            format!("ok ({} generator(s))", report.input.action_generators)
        } else {
            format!("fail: {}", v.equivariance.failure.as_deref().unwrap_or(""))
        };
        let _ = writeln!(out, "equivariance: {eq}");
    }
    for complex in &report.complexes {
        render_complex(&mut out, complex);
    }
    out
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "fail"
    }
}

fn render_complex(out: &mut String, complex: &ComplexReport) {
    let title = match complex.kind {
        ComplexKind::Full => "full complex",
        ComplexKind::Invariant => "invariant complex",
    };
    let _ = writeln!(out, "\n{title}");
    let _ = writeln!(
        out,
        "{:>6} {:>8} {:>7} {:>10} {:>6}",
        "degree", "cochains", "cycles", "boundaries", "betti"
    );
    for row in &complex.degrees {
        let _ = writeln!(
            out,
            "{:>6} {:>8} {:>7} {:>10} {:>6}",
            row.degree, row.cochains, row.cycles, row.boundaries, row.betti
        );
    }
    let betti: Vec<String> = complex.betti.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "betti: {}", betti.join(" "));
    let _ = writeln!(
        out,
        "euler characteristic: {} (cochains {})",
        complex.euler.from_betti, complex.euler.from_cochains
    );
    if let Some(note) = &complex.note {
        let _ = writeln!(out, "{note}");
    }
    let Some(s) = &complex.symplectic else {
        return;
    };
    let _ = writeln!(out, "closed 2-forms: {}", s.closed_two_forms.len());
    for (i, f) in s.closed_two_forms.iter().enumerate() {
        let _ = writeln!(out, "  c{} : {}", i + 1, f.text);
    }
    let _ = writeln!(
        out,
        "top power polynomial: {} ({} monomials examined)",
        s.polynomial.text, s.polynomial.monomials_examined
    );
    match (&s.witness, &s.proof) {
        (Some(w), _) => {
            let _ = writeln!(out, "verdict: symplectic");
            let _ = writeln!(out, "  witness: {}", w.form.text);
            let _ = writeln!(out, "  found by: {}", w.strategy);
            let _ = writeln!(
                out,
                "  certificate: volume coefficient of omega^n = {} (closed: {}, in complex: {})",
                w.certificate, w.closed, w.in_subcomplex
            );
        }
        (None, Some(proof)) => {
            let _ = writeln!(out, "verdict: not symplectic");
            let _ = writeln!(out, "  proof: {proof}");
        }
        (None, None) => {}
    }
    let c = &s.cohomology_check;
    let _ = writeln!(
        out,
        "cohomology: b2 = {}, top betti = {}, class with nonzero top power: {}",
        c.betti_two,
        c.top_betti,
        if c.exists { "yes" } else { "no" }
    );
    let _ = writeln!(out, "conclusion: {}", s.conclusion);
}
