//! The four subcommands. All documents go through `output` so numeric
//! formatting stays in one place.

use std::path::Path;

use gdoa_core::algebra::{AlgebraSpec, BuiltinFamily};
use gdoa_core::classify::{
    classify, classify_exact, lambda_value, lambda_value_exact, RepParams, UnirrepClass, Weight,
};
use gdoa_core::error::Error;
use gdoa_core::matrix::Matrix;
use gdoa_core::rational::{rat_from_str, rat_to_f64, rat_to_i64, Rat};
use gdoa_core::rep::{build_representation, casimir_matrix, verify, MatrixRep};
use gdoa_core::tables;
use serde_json::Value;

use crate::output::{emit, int, num, num_cell, obj, push, rat_str, render};
use crate::{input_error, AlgebraArgs, ClassifyArgs, Family, Format, Mode, PointArgs, RepArgs, TableArgs, VerifyArgs};

const SCHEMA_VERSION: i64 = 1;

fn builtin(family: Family) -> BuiltinFamily {
    match family {
        Family::ArikCoon => BuiltinFamily::ArikCoon,
        Family::ChaturvediSrinivasan => BuiltinFamily::ChaturvediSrinivasan,
        Family::TammDancoff => BuiltinFamily::TammDancoff,
    }
}

fn parse_rat(flag: &str, s: &str) -> Result<Rat, Error> {
    rat_from_str(s).map_err(|_| input_error(format!("--{flag}: cannot parse `{s}` as a number")))
}

fn parse_real(flag: &str, s: &str) -> Result<f64, Error> {
    Ok(rat_to_f64(&parse_rat(flag, s)?))
}

/// The family parameter: `--q` for Arik-Coon and Tamm-Dancoff, `--g` for
/// Chaturvedi-Srinivasan.
fn family_param(args: &AlgebraArgs) -> Result<Rat, Error> {
    match args.algebra {
        Family::ChaturvediSrinivasan => {
            if args.q.is_some() {
                return Err(input_error("chaturvedi-srinivasan takes --g, not --q"));
            }
            parse_rat("g", args.g.as_deref().ok_or_else(|| input_error("--g is required"))?)
        }
        _ => {
            if args.g.is_some() {
                return Err(input_error(format!("{} takes --q, not --g", args.algebra.label())));
            }
            parse_rat("q", args.q.as_deref().ok_or_else(|| input_error("--q is required"))?)
        }
    }
}

fn build_algebra(args: &AlgebraArgs) -> Result<(AlgebraSpec, Rat), Error> {
    let param = family_param(args)?;
    let algebra = match args.algebra {
        Family::ArikCoon => AlgebraSpec::arik_coon_rat(param.clone())?,
        Family::ChaturvediSrinivasan => AlgebraSpec::chaturvedi_srinivasan_rat(param.clone())?,
        Family::TammDancoff => AlgebraSpec::tamm_dancoff_rat(param.clone())?,
    };
    Ok((algebra, param))
}

fn algebra_json(family: Family, param: &Rat, mode: Mode) -> Value {
    let key = match family {
        Family::ChaturvediSrinivasan => "g",
        _ => "q",
    };
    let value = match mode {
        Mode::Float => num(rat_to_f64(param)),
        Mode::Exact => rat_str(param),
    };
    obj(vec![
        ("family", Value::String(family.label().to_string())),
        (key, value),
    ])
}

fn weight(point: &PointArgs) -> Result<Weight, Error> {
    match (&point.c, &point.lambda0) {
        (Some(c), None) => Ok(Weight::Casimir(parse_real("c", c)?)),
        (None, Some(l0)) => Ok(Weight::Lambda0(parse_real("lambda0", l0)?)),
        (None, None) => Err(input_error("one of --c or --lambda0 is required")),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn rep_params(algebra: &AlgebraSpec, point: &PointArgs) -> Result<RepParams, Error> {
    let nu0 = parse_real("nu0", &point.nu0)?;
    let w = weight(point)?;
    if point.ub_override {
        RepParams::with_ub_override(algebra, nu0, w)
    } else {
        RepParams::new(algebra, nu0, w)
    }
}

/// Class fields shared by classify and rep documents.
fn class_json_f64(class: &UnirrepClass<f64>) -> Value {
    let mut doc = obj(vec![("class", Value::String(class.tag().to_string()))]);
    match class {
        UnirrepClass::Bfb { nu0_shifted, c } | UnirrepClass::Bfa { nu0_shifted, c } => {
            push(&mut doc, "nu0_shifted", num(*nu0_shifted));
            push(&mut doc, "c", num(*c));
        }
        UnirrepClass::Fd { nu0_shifted, c, p, dim } => {
            push(&mut doc, "nu0_shifted", num(*nu0_shifted));
            push(&mut doc, "c", num(*c));
            push(&mut doc, "p", int(*p as i64));
            push(&mut doc, "dim", int(*dim as i64));
        }
        UnirrepClass::Ub { nu0_mod1, c, verified_window, analytic } => {
            push(&mut doc, "nu0_mod1", num(*nu0_mod1));
            push(&mut doc, "c", num(*c));
            push(
                &mut doc,
                "verified_window",
                Value::Array(vec![int(verified_window.0), int(verified_window.1)]),
            );
            push(&mut doc, "analytic", Value::Bool(*analytic));
        }
        UnirrepClass::NonUnitary { witness_n, lambda_value } => {
            push(
                &mut doc,
                "witness",
                obj(vec![("n", int(*witness_n)), ("lambda", num(*lambda_value))]),
            );
        }
    }
    doc
}

fn class_json_rat(class: &UnirrepClass<Rat>) -> Value {
    let mut doc = obj(vec![("class", Value::String(class.tag().to_string()))]);
    match class {
        UnirrepClass::Bfb { nu0_shifted, c } | UnirrepClass::Bfa { nu0_shifted, c } => {
            push(&mut doc, "nu0_shifted", rat_str(nu0_shifted));
            push(&mut doc, "c", rat_str(c));
        }
        UnirrepClass::Fd { nu0_shifted, c, p, dim } => {
            push(&mut doc, "nu0_shifted", rat_str(nu0_shifted));
            push(&mut doc, "c", rat_str(c));
            push(&mut doc, "p", int(*p as i64));
            push(&mut doc, "dim", int(*dim as i64));
        }
        UnirrepClass::Ub { nu0_mod1, c, verified_window, analytic } => {
            push(&mut doc, "nu0_mod1", rat_str(nu0_mod1));
            push(&mut doc, "c", rat_str(c));
            push(
                &mut doc,
                "verified_window",
                Value::Array(vec![int(verified_window.0), int(verified_window.1)]),
            );
            push(&mut doc, "analytic", Value::Bool(*analytic));
        }
        UnirrepClass::NonUnitary { witness_n, lambda_value } => {
            push(
                &mut doc,
                "witness",
                obj(vec![("n", int(*witness_n)), ("lambda", rat_str(lambda_value))]),
            );
        }
    }
    doc
}

/// Offset range of the sample lambda window relative to its origin:
/// the retained side for the one-sided classes, the full block for FD,
/// a symmetric window otherwise.
fn window_span(class_tag: &str, p: Option<u32>) -> (i64, i64) {
    match class_tag {
        "BFB" => (0, 8),
        "BFA" => (-8, 0),
        "FD" => (0, p.unwrap_or(0) as i64 + 1),
        "UB" => (-4, 4),
        _ => (-8, 8),
    }
}

fn lambda_window_f64(
    algebra: &AlgebraSpec,
    nu0: f64,
    c: f64,
    class: &UnirrepClass<f64>,
) -> Result<Value, Error> {
    let (origin, p) = match class {
        UnirrepClass::Bfb { nu0_shifted, .. } | UnirrepClass::Bfa { nu0_shifted, .. } => {
            (*nu0_shifted, None)
        }
        UnirrepClass::Fd { nu0_shifted, p, .. } => (*nu0_shifted, Some(*p)),
        _ => (nu0, None),
    };
    let (n_min, n_max) = window_span(class.tag(), p);
    let values: Vec<Value> = (n_min..=n_max)
        .map(|n| Ok(num(lambda_value(algebra, origin, c, n)?)))
        .collect::<Result<_, Error>>()?;
    Ok(obj(vec![
        ("origin", num(origin)),
        ("n_min", int(n_min)),
        ("n_max", int(n_max)),
        ("values", Value::Array(values)),
    ]))
}

fn lambda_window_rat(
    algebra: &AlgebraSpec,
    nu0: i64,
    c: &Rat,
    class: &UnirrepClass<Rat>,
) -> Result<Value, Error> {
    let (origin, p) = match class {
        UnirrepClass::Bfb { nu0_shifted, .. } | UnirrepClass::Bfa { nu0_shifted, .. } => {
            (rat_to_i64(nu0_shifted).unwrap_or(nu0), None)
        }
        UnirrepClass::Fd { nu0_shifted, p, .. } => (rat_to_i64(nu0_shifted).unwrap_or(nu0), Some(*p)),
        _ => (nu0, None),
    };
    let (n_min, n_max) = window_span(class.tag(), p);
    let values: Vec<Value> = (n_min..=n_max)
        .map(|n| Ok(rat_str(&lambda_value_exact(algebra, origin, c, n)?)))
        .collect::<Result<_, Error>>()?;
    Ok(obj(vec![
        ("origin", int(origin)),
        ("n_min", int(n_min)),
        ("n_max", int(n_max)),
        ("values", Value::Array(values)),
    ]))
}

fn classify_csv(result: &Value) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let cols = ["class", "nu0_shifted", "nu0_mod1", "c", "p", "dim", "witness_n"];
    w.write_record(cols).map_err(csv_err)?;
    let cell = |key: &str| -> String {
        match result.get(key) {
            Some(Value::String(s)) => s.clone(),
            Some(Value::Number(n)) => n.to_string(),
            _ => String::new(),
        }
    };
    let witness = result
        .get("witness")
        .and_then(|w| w.get("n"))
        .map(|n| n.to_string())
        .unwrap_or_default();
    w.write_record([
        cell("class"),
        cell("nu0_shifted"),
        cell("nu0_mod1"),
        cell("c"),
        cell("p"),
        cell("dim"),
        witness,
    ])
    .map_err(csv_err)?;
    finish_csv(w)
}

fn csv_err(e: csv::Error) -> Error {
    Error::EvaluationFailure(format!("csv write failed: {e}"))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, Error> {
    let bytes = w.into_inner().map_err(|e| Error::EvaluationFailure(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::EvaluationFailure(e.to_string()))
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<u8, Error> {
    let (algebra, param) = build_algebra(&args.algebra)?;
    let point = &args.point;
    let result = match point.mode {
        Mode::Float => {
            let params = rep_params(&algebra, point)?;
            let class = classify(&algebra, &params, point.window, point.tol)?;
            let c = params.casimir(&algebra)?;
            let mut doc = class_json_f64(&class);
            push(&mut doc, "lambda_window", lambda_window_f64(&algebra, params.nu0(), c, &class)?);
            doc
        }
        Mode::Exact => {
            let nu0 = rat_to_i64(&parse_rat("nu0", &point.nu0)?)
                .ok_or_else(|| input_error("exact mode requires an integer --nu0"))?;
            let c = match (&point.c, &point.lambda0) {
                (Some(c), None) => parse_rat("c", c)?,
                _ => return Err(input_error("exact mode requires --c (not --lambda0)")),
            };
            let class = classify_exact(&algebra, nu0, &c, point.window)?;
            let mut doc = class_json_rat(&class);
            push(&mut doc, "lambda_window", lambda_window_rat(&algebra, nu0, &c, &class)?);
            doc
        }
    };
    let document = match args.format {
        Format::Json => {
            let mut doc = obj(vec![
                ("schema_version", int(SCHEMA_VERSION)),
                ("command", Value::String("classify".to_string())),
                (
                    "mode",
                    Value::String(
                        match point.mode {
                            Mode::Float => "float",
                            Mode::Exact => "exact",
                        }
                        .to_string(),
                    ),
                ),
                ("algebra", algebra_json(args.algebra.algebra, &param, point.mode)),
                ("result", result),
            ]);
            push(&mut doc, "window", int(point.window));
            render(&doc)
        }
        Format::Csv => classify_csv(&result)?,
    };
    emit(&document, args.output.as_deref()).map_err(io_err)?;
    Ok(0)
}

fn io_err(e: std::io::Error) -> Error {
    Error::EvaluationFailure(format!("output write failed: {e}"))
}

pub fn cmd_table(args: &TableArgs) -> Result<u8, Error> {
    let family = builtin(args.algebra);
    let mut rows_json = Vec::new();
    let mut records = Vec::new();
    let mut all_match = true;
    for row in tables::rows(family) {
        let check = tables::check_row(family, &row, 8)?;
        let matched = check.class_ok && check.max_deviation <= args.tol;
        all_match &= matched;
        rows_json.push(obj(vec![
            ("regime", Value::String(row.regime.to_string())),
            ("sample_q", rat_str(&row.q)),
            ("sample_nu0", rat_str(&row.nu0)),
            ("sample_c", rat_str(&row.c)),
            ("expected_class", Value::String(row.expected_tag.to_string())),
            ("computed_class", Value::String(check.computed_tag.to_string())),
            ("max_lambda_deviation", num(check.max_deviation)),
            ("match", Value::Bool(matched)),
        ]));
        records.push([
            row.regime.to_string(),
            gdoa_core::rational::rat_to_string(&row.q),
            gdoa_core::rational::rat_to_string(&row.nu0),
            gdoa_core::rational::rat_to_string(&row.c),
            row.expected_tag.to_string(),
            check.computed_tag.to_string(),
            num_cell(check.max_deviation),
        ]);
    }
    let document = match args.format {
        Format::Json => render(&obj(vec![
            ("schema_version", int(SCHEMA_VERSION)),
            ("command", Value::String("table".to_string())),
            ("family", Value::String(args.algebra.label().to_string())),
            ("rows", Value::Array(rows_json)),
            ("all_match", Value::Bool(all_match)),
        ])),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "regime",
                "sample_q",
                "sample_nu0",
                "sample_c",
                "expected_class",
                "computed_class",
                "max_lambda_deviation",
            ])
            .map_err(csv_err)?;
            for record in &records {
                w.write_record(record).map_err(csv_err)?;
            }
            finish_csv(w)?
        }
    };
    emit(&document, args.output.as_deref()).map_err(io_err)?;
    Ok(if all_match { 0 } else { 3 })
}

fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| num(m.get(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

fn build_checked_rep(
    algebra: &AlgebraSpec,
    point: &PointArgs,
    dim: usize,
) -> Result<(UnirrepClass<f64>, MatrixRep), Error> {
    if point.mode == Mode::Exact {
        return Err(input_error("matrix construction runs in float mode only"));
    }
    let params = rep_params(algebra, point)?;
    let class = classify(algebra, &params, point.window, point.tol)?;
    let rep = build_representation(algebra, &class, dim)?;
    Ok((class, rep))
}

fn rep_json(algebra: &AlgebraSpec, rep: &MatrixRep) -> Result<Value, Error> {
    let (from_adag_a, from_a_adag) = casimir_matrix(algebra, rep)?;
    let (lo, hi) = rep.interior();
    Ok(obj(vec![
        ("dim", int(rep.dim as i64)),
        (
            "basis_offsets",
            Value::Array(rep.basis_offsets.iter().map(|&o| int(o)).collect()),
        ),
        ("nu_origin", num(rep.nu_origin)),
        ("truncated_bottom", Value::Bool(rep.truncated_bottom)),
        ("truncated_top", Value::Bool(rep.truncated_top)),
        ("c_value", num(rep.c_value)),
        ("n_diag", Value::Array(rep.nu_values().iter().map(|&v| num(v)).collect())),
        ("a", matrix_json(&rep.a_mat)),
        ("adag", matrix_json(&rep.adag_mat)),
        (
            "casimir_diagnostic",
            obj(vec![
                ("interior", Value::Array(vec![int(lo), int(hi)])),
                (
                    "from_adag_a",
                    Value::Array(from_adag_a.iter().map(|&v| num(v)).collect()),
                ),
                (
                    "from_a_adag",
                    Value::Array(from_a_adag.iter().map(|&v| num(v)).collect()),
                ),
            ]),
        ),
    ]))
}

fn rep_csv(rep: &MatrixRep) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["matrix", "row", "col", "value"]).map_err(csv_err)?;
    let mut dump = |name: &str, m: &Matrix| -> Result<(), Error> {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if v != 0.0 {
                    w.write_record([name, &i.to_string(), &j.to_string(), &num_cell(v)])
                        .map_err(csv_err)?;
                }
            }
        }
        Ok(())
    };
    dump("n", &rep.n_mat)?;
    dump("a", &rep.a_mat)?;
    dump("adag", &rep.adag_mat)?;
    finish_csv(w)
}

pub fn cmd_rep(args: &RepArgs) -> Result<u8, Error> {
    let (algebra, param) = build_algebra(&args.algebra)?;
    let (class, rep) = build_checked_rep(&algebra, &args.point, args.dim)?;
    let document = match args.format {
        Format::Json => render(&obj(vec![
            ("schema_version", int(SCHEMA_VERSION)),
            ("command", Value::String("rep".to_string())),
            ("algebra", algebra_json(args.algebra.algebra, &param, Mode::Float)),
            ("class", class_json_f64(&class)),
            ("rep", rep_json(&algebra, &rep)?),
        ])),
        Format::Csv => rep_csv(&rep)?,
    };
    emit(&document, args.output.as_deref()).map_err(io_err)?;
    Ok(0)
}

fn report_json(report: &gdoa_core::rep::VerificationReport, threshold: f64, ok: bool) -> Value {
    obj(vec![
        ("schema_version", int(SCHEMA_VERSION)),
        ("command", Value::String("verify".to_string())),
        ("threshold", num(threshold)),
        (
            "report",
            obj(vec![
                ("residual_number_comm", num(report.residual_number_comm)),
                ("residual_quommutator", num(report.residual_quommutator)),
                ("residual_casimir", num(report.residual_casimir)),
                ("residual_aa_dag", num(report.residual_aa_dag)),
                (
                    "interior",
                    Value::Array(vec![int(report.interior_range.0), int(report.interior_range.1)]),
                ),
                ("max_residual", num(report.max_residual())),
            ]),
        ),
        ("ok", Value::Bool(ok)),
    ])
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<u8, Error> {
    let (algebra, rep) = match &args.from_file {
        Some(path) => load_rep(path)?,
        None => {
            let algebra_args = AlgebraArgs {
                algebra: args
                    .algebra
                    .ok_or_else(|| input_error("--algebra is required without --from-file"))?,
                q: args.q.clone(),
                g: args.g.clone(),
            };
            let point = PointArgs {
                nu0: args
                    .nu0
                    .clone()
                    .ok_or_else(|| input_error("--nu0 is required without --from-file"))?,
                c: args.c.clone(),
                lambda0: args.lambda0.clone(),
                window: args.window,
                tol: args.tol,
                mode: Mode::Float,
                ub_override: args.ub_override,
            };
            let (algebra, _) = build_algebra(&algebra_args)?;
            let (_, rep) = build_checked_rep(&algebra, &point, args.dim)?;
            (algebra, rep)
        }
    };
    let report = verify(&algebra, &rep)?;
    let ok = report.max_residual() <= args.threshold;
    let document = render(&report_json(&report, args.threshold, ok));
    emit(&document, args.output.as_deref()).map_err(io_err)?;
    Ok(if ok { 0 } else { 3 })
}

/// Reads back a JSON dump produced by `gdoa rep --format json`.
fn load_rep(path: &Path) -> Result<(AlgebraSpec, MatrixRep), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| input_error(format!("{} is not valid JSON: {e}", path.display())))?;
    let bad = |what: &str| input_error(format!("{}: missing or malformed `{what}`", path.display()));

    let algebra_doc = doc.get("algebra").ok_or_else(|| bad("algebra"))?;
    let family = algebra_doc
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("algebra.family"))?;
    let get_f64 = |v: &Value, key: &str| -> Result<f64, Error> {
        v.get(key).and_then(Value::as_f64).ok_or_else(|| bad(key))
    };
    let algebra = match family {
        "arik-coon" => AlgebraSpec::arik_coon(get_f64(algebra_doc, "q")?)?,
        "chaturvedi-srinivasan" => {
            AlgebraSpec::chaturvedi_srinivasan(get_f64(algebra_doc, "g")?)?
        }
        "tamm-dancoff" => AlgebraSpec::tamm_dancoff(get_f64(algebra_doc, "q")?)?,
        other => return Err(input_error(format!("unknown family `{other}`"))),
    };

    let rep_doc = doc.get("rep").ok_or_else(|| bad("rep"))?;
    let dim = rep_doc
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("rep.dim"))? as usize;
    let f64_array = |key: &str| -> Result<Vec<f64>, Error> {
        rep_doc
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(key))?
            .iter()
            .map(|v| v.as_f64().ok_or_else(|| bad(key)))
            .collect()
    };
    let matrix = |key: &str| -> Result<Matrix, Error> {
        let rows = rep_doc
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(key))?;
        if rows.len() != dim {
            return Err(bad(key));
        }
        let mut m = Matrix::zeros(dim, dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| bad(key))?;
            if row.len() != dim {
                return Err(bad(key));
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.as_f64().ok_or_else(|| bad(key))?);
            }
        }
        Ok(m)
    };
    let basis_offsets: Vec<i64> = rep_doc
        .get("basis_offsets")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("rep.basis_offsets"))?
        .iter()
        .map(|v| v.as_i64().ok_or_else(|| bad("rep.basis_offsets")))
        .collect::<Result<_, _>>()?;
    let n_diag = f64_array("n_diag")?;
    if n_diag.len() != dim || basis_offsets.len() != dim {
        return Err(bad("rep.dim"));
    }
    let rep = MatrixRep {
        dim,
        basis_offsets,
        nu_origin: get_f64(rep_doc, "nu_origin")?,
        n_mat: Matrix::diagonal(&n_diag),
        a_mat: matrix("a")?,
        adag_mat: matrix("adag")?,
        c_value: get_f64(rep_doc, "c_value")?,
        truncated_top: rep_doc
            .get("truncated_top")
            .and_then(Value::as_bool)
            .ok_or_else(|| bad("rep.truncated_top"))?,
        truncated_bottom: rep_doc
            .get("truncated_bottom")
            .and_then(Value::as_bool)
            .ok_or_else(|| bad("rep.truncated_bottom"))?,
    };
    Ok((algebra, rep))
}
