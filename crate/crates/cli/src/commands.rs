use std::fs;

use skewrank::exterior::TensorFile;
use skewrank::orbit::{
    canonical_form, canonical_forms_text, dual_cone_dim, orbit_dim, orbit_table, signature, table_partner,
    Classification, DualDim, OrbitLabel, SignatureTable, ORBIT_DIMS,
};
use skewrank::poly::{format_ideal, GroebnerStatus};
use skewrank::report::{ClassificationRecord, DualRecord, ReportDocument, ReportRecord, TclRecord};
use skewrank::scroll::{scroll_contact_experiment, ScrollOptions};
use skewrank::secant::gr27::paper_points;
use skewrank::secant::{
    contact_kernel_dim, defectivity_scan, gr27_oracle, tcl_dimension, tcl_ideal, ContactOptions, Gr27Options,
    GrassmannCase, PointStream, ScanOptions, Verdict,
};
use skewrank::{Error, FieldContext, Result};

use crate::{
    ClassifyArgs, Command, ContactArgs, DualArgs, OracleArgs, OrbitsArgs, ScanArgs, ScrollArgs, TclArgs, EXIT_MISMATCH,
    EXIT_UNRESOLVED,
};

pub fn run(ctx: &FieldContext, command: &Command, doc: &mut ReportDocument) -> Result<u8> {
    match command {
        Command::Scan(a) => scan(ctx, a, doc),
        Command::Contact(a) => contact(ctx, a, doc),
        Command::Tcl(a) => tcl(ctx, a, doc),
        Command::Orbits(a) => orbits(ctx, a, doc),
        Command::Dual(a) => dual(ctx, a, doc),
        Command::Classify(a) => classify(ctx, a, doc),
        Command::Scroll(a) => scroll(ctx, a, doc),
        Command::Oracle(a) => oracle(ctx, a, doc),
    }
}

fn scan(ctx: &FieldContext, a: &ScanArgs, doc: &mut ReportDocument) -> Result<u8> {
    let options = ScanOptions {
        n_max: a.nmax,
        trials: a.trials,
        early_exit: !a.exhaustive,
        ..ScanOptions::default()
    };
    let report = defectivity_scan(ctx, &options)?;
    let mut code = 0;
    for rec in &report.records {
        if rec.verdict == Some(Verdict::Unresolved) {
            doc.warn(format!("{}: contact trials disagree {:?}", rec.case, rec.contact_trials));
            code = EXIT_UNRESOLVED;
        }
    }
    for w in report.warnings {
        doc.warn(w);
    }
    doc.records.extend(report.records.into_iter().map(ReportRecord::Scan));
    Ok(code)
}

fn contact(ctx: &FieldContext, a: &ContactArgs, doc: &mut ReportDocument) -> Result<u8> {
    let case = GrassmannCase::new(a.k, a.n, a.r)?;
    let report = contact_kernel_dim(
        ctx,
        case,
        ContactOptions {
            trials: a.trials,
            all_points: a.all_points,
        },
    )?;
    let code = if report.value.is_none() {
        doc.warn(format!("{case}: no modal kernel among {:?}", report.kernel_dims));
        EXIT_UNRESOLVED
    } else {
        0
    };
    doc.push(ReportRecord::Contact(report));
    Ok(code)
}

fn tcl(ctx: &FieldContext, a: &TclArgs, doc: &mut ReportDocument) -> Result<u8> {
    let f = &ctx.field;
    let case = GrassmannCase::new(a.k, a.n, a.r)?;
    let points = if a.paper_points {
        if (a.k, a.n, a.r) != (2, 7, 3) {
            return Err(Error::Shape("--paper-points needs k=2, n=7, r=3".into()));
        }
        paper_points(ctx)
    } else {
        PointStream::new(ctx, a.k, a.n, 0, 0).take(ctx, a.r)
    };
    let ideal = tcl_ideal(f, &points)?;
    let generators = ideal.generators();
    if let Some(path) = &a.dump {
        fs::write(path, format_ideal(f, &generators))?;
    }
    let outcome = tcl_dimension(f, &ideal, a.cap)?;
    let code = if outcome.status == GroebnerStatus::Inconclusive {
        doc.warn(format!("{case}: Buchberger stopped at degree cap {}", a.cap));
        EXIT_UNRESOLVED
    } else {
        0
    };
    doc.push(ReportRecord::Tcl(TclRecord {
        case,
        points: if a.paper_points { "paper" } else { "random" }.into(),
        nvars: ideal.nvars,
        generators: generators.len(),
        outcome,
    }));
    Ok(code)
}

fn orbits(ctx: &FieldContext, a: &OrbitsArgs, doc: &mut ReportDocument) -> Result<u8> {
    if let Some(path) = &a.export_forms {
        fs::write(path, canonical_forms_text())?;
    }
    let records = orbit_table(ctx, a.trials)?;
    let mut code = 0;
    for rec in &records {
        if rec.dim != ORBIT_DIMS[rec.label.index()] {
            doc.warn(format!(
                "{}: orbit dimension {} differs from the table value {}",
                rec.label,
                rec.dim,
                ORBIT_DIMS[rec.label.index()]
            ));
            code = EXIT_MISMATCH;
        }
        if let Some(partner) = table_partner(rec.label) {
            let want = records[partner.index()].dim;
            if rec.dual_dim != Some(want) {
                doc.warn(format!(
                    "{}: dual dimension {:?} differs from dim {} = {want}",
                    rec.label, rec.dual_dim, partner
                ));
                code = EXIT_MISMATCH;
            }
        }
    }
    doc.records.extend(records.into_iter().map(ReportRecord::Orbit));
    Ok(code)
}

fn dual(ctx: &FieldContext, a: &DualArgs, doc: &mut ReportDocument) -> Result<u8> {
    let f = &ctx.field;
    let label: OrbitLabel = a.orbit.parse()?;
    let t = canonical_form(f, label);
    let dual_dim = if t.is_zero() {
        None
    } else {
        match dual_cone_dim(ctx, &t, a.trials)? {
            DualDim::Dim(d) => Some(d),
            DualDim::Empty => None,
        }
    };
    let partner = table_partner(label);
    let partner_dim = partner.map(|p| orbit_dim(f, &canonical_form(f, p))).transpose()?;
    let consistent = dual_dim == partner_dim;
    if !consistent {
        doc.warn(format!(
            "{label}: dual dimension {dual_dim:?} differs from the partner dimension {partner_dim:?}"
        ));
    }
    doc.push(ReportRecord::Dual(DualRecord {
        orbit: label,
        dim: orbit_dim(f, &t)?,
        dual_dim,
        partner,
        partner_dim,
        consistent,
    }));
    Ok(if consistent { 0 } else { EXIT_MISMATCH })
}

fn classify(ctx: &FieldContext, a: &ClassifyArgs, doc: &mut ReportDocument) -> Result<u8> {
    let file = TensorFile::parse(&fs::read_to_string(&a.input)?)?;
    if file.modulus != ctx.field.modulus() {
        doc.warn(format!(
            "tensor file modulus {} differs from {}; values were reduced",
            file.modulus,
            ctx.field.modulus()
        ));
    }
    let t = file.to_tensor(&ctx.field)?;
    let sig = signature(ctx, &t, a.trials)?;
    let table = SignatureTable::build(ctx, a.trials)?;
    let classification = table.classify(ctx, &t, a.trials)?;
    let code = match &classification {
        Classification::Orbit(_) => 0,
        Classification::Ambiguous(labels) => {
            doc.warn(format!("signature matches several orbits: {labels:?}"));
            EXIT_UNRESOLVED
        }
    };
    doc.push(ReportRecord::Classification(ClassificationRecord {
        signature: sig,
        classification,
    }));
    Ok(code)
}

fn scroll(ctx: &FieldContext, a: &ScrollArgs, doc: &mut ReportDocument) -> Result<u8> {
    let defaults = ScrollOptions::default();
    let options = ScrollOptions {
        checks: a.checks.unwrap_or(defaults.checks),
        negative_checks: if a.demo || a.negative_control { a.negative_checks } else { 0 },
    };
    let report = scroll_contact_experiment(ctx, options)?;
    let passed = report.passed();
    if !passed {
        doc.warn("scroll experiment differs from the reference outcome");
    }
    doc.push(ReportRecord::Scroll(report));
    Ok(if passed { 0 } else { EXIT_MISMATCH })
}

fn oracle(ctx: &FieldContext, a: &OracleArgs, doc: &mut ReportDocument) -> Result<u8> {
    let report = gr27_oracle(
        ctx,
        Gr27Options {
            groebner: !a.no_groebner,
            ..Gr27Options::default()
        },
    )?;
    let mut code = 0;
    for c in report.checks.iter().filter(|c| !c.passed) {
        doc.warn(format!("{}: {}", c.name, c.detail));
        code = EXIT_MISMATCH;
    }
    if let Some(g) = &report.groebner {
        if g.status == GroebnerStatus::Inconclusive {
            doc.warn("Gröbner run inconclusive; substitution checks decide");
        }
    }
    doc.push(ReportRecord::Oracle(report));
    Ok(code)
}
