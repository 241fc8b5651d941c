//! Implementations behind the CLI subcommands. Each returns rendered text
//! plus an exit code, so the binary stays a thin argument-parsing shell and
//! integration tests can drive the logic directly.

use std::fmt::Write as _;

use perfrank::{
    audit_score_on_grid, catalog, make_grid, optimize_tau, optimize_tau_for_entry, rank_bounds,
    AuditConfig, ConstraintSet, Counterexample, DirectSearchConfig, EntityRecord, MixtureSide,
    Objective, Performance, PerformanceGrid, Score, TauProvenance, TauResult, TestVerdict,
    TwoClass,
};
use serde_json::Value;

use crate::expr::ScoreExpression;
use crate::json;
use crate::reference;

/// Rendering target shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

/// A user error: reported on stderr with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<perfrank::Error> for UsageError {
    fn from(e: perfrank::Error) -> Self {
        UsageError(e.to_string())
    }
}

/// Finished command: text for stdout and the process exit code.
pub struct CommandOutput {
    pub text: String,
    pub exit_code: i32,
}

fn ok(text: String) -> CommandOutput {
    CommandOutput { text, exit_code: 0 }
}

/// Score selected by name or by expression.
pub enum ScoreChoice {
    Named(String),
    Expression(String),
}

struct ResolvedScore {
    display: String,
    score: Score,
    entry: Option<perfrank::CatalogEntry>,
}

fn resolve_score(choice: &ScoreChoice) -> Result<ResolvedScore, UsageError> {
    match choice {
        ScoreChoice::Named(name) => {
            let entry = perfrank::find_entry(name).ok_or_else(|| {
                UsageError(format!(
                    "unknown score `{name}`; list: {}",
                    perfrank::score_names().join(", ")
                ))
            })?;
            Ok(ResolvedScore {
                display: name.clone(),
                score: entry.score().clone(),
                entry: Some(entry),
            })
        }
        ScoreChoice::Expression(text) => {
            let parsed = ScoreExpression::parse(text)
                .map_err(|e| UsageError(format!("expression parse error {e}")))?;
            Ok(ResolvedScore {
                display: text.clone(),
                score: parsed.to_score(),
                entry: None,
            })
        }
    }
}

fn constraint_label(constraint: ConstraintSet) -> String {
    constraint.describe()
}

fn audit_config(seed: u64) -> AuditConfig {
    AuditConfig {
        seed,
        ..AuditConfig::default()
    }
}

// ---------------------------------------------------------------------------
// table1

pub struct TableOptions {
    pub resolution: Option<u32>,
    pub seed: u64,
    pub only: Option<String>,
    pub check: bool,
}

pub struct TableCell {
    pub constraint: ConstraintSet,
    pub verdict: TestVerdict,
    pub tau_min: TauResult,
    pub tau_max: TauResult,
}

pub struct TableRow {
    pub name: &'static str,
    pub label: &'static str,
    pub cells: Vec<TableCell>,
}

/// The three review constraint sets, in column order.
pub fn review_constraints() -> Vec<ConstraintSet> {
    reference::CONSTRAINT_PRIORS
        .iter()
        .map(|prior| match prior {
            None => ConstraintSet::Unconstrained,
            Some(p) => ConstraintSet::FixedPositivePrior(*p),
        })
        .collect()
}

/// Audits and correlation-optimizes every selected catalog score on the
/// three review constraint sets.
pub fn compute_table(options: &TableOptions) -> Result<Vec<TableRow>, UsageError> {
    let setting = TwoClass::new();
    let config = audit_config(options.seed);
    let search = DirectSearchConfig::default();
    let grids: Vec<PerformanceGrid> = review_constraints()
        .into_iter()
        .map(|constraint| {
            let resolution = options
                .resolution
                .unwrap_or_else(|| constraint.default_resolution());
            make_grid(setting.space(), constraint, resolution).map_err(UsageError::from)
        })
        .collect::<Result<_, _>>()?;

    let entries: Vec<_> = match &options.only {
        Some(name) => {
            let entry = perfrank::find_entry(name).ok_or_else(|| {
                UsageError(format!(
                    "unknown score `{name}`; list: {}",
                    perfrank::score_names().join(", ")
                ))
            })?;
            vec![entry]
        }
        None => catalog(),
    };

    let mut rows = Vec::with_capacity(entries.len());
    for entry in entries {
        let mut cells = Vec::with_capacity(grids.len());
        for grid in &grids {
            let verdict =
                audit_score_on_grid(entry.score(), setting.satisfaction(), grid, &config)?;
            let tau_min = optimize_tau_for_entry(&entry, grid, Objective::Min, &search)?;
            let tau_max = optimize_tau_for_entry(&entry, grid, Objective::Max, &search)?;
            cells.push(TableCell {
                constraint: grid.constraint(),
                verdict,
                tau_min,
                tau_max,
            });
        }
        rows.push(TableRow {
            name: entry.name(),
            label: entry.label(),
            cells,
        });
    }
    Ok(rows)
}

/// Compares computed verdict triples against the reference table; returns
/// one description per mismatch.
pub fn check_against_reference(rows: &[TableRow]) -> Vec<String> {
    let mut mismatches = Vec::new();
    for row in rows {
        for (column, cell) in row.cells.iter().enumerate() {
            let Some(expected) = reference::expected_verdict(row.name, column) else {
                continue;
            };
            let got = cell.verdict.as_booleans();
            if got != expected {
                mismatches.push(format!(
                    "{} @ {}: got {:?}, expected {:?}",
                    row.name,
                    constraint_label(cell.constraint),
                    got,
                    expected
                ));
            }
        }
    }
    mismatches
}

pub fn run_table1(options: &TableOptions, format: OutputFormat) -> Result<CommandOutput, UsageError> {
    let rows = compute_table(options)?;
    let text = match format {
        OutputFormat::Markdown => render_table_markdown(&rows),
        OutputFormat::Csv => render_table_csv(&rows),
        OutputFormat::Json => render_table_json(&rows, options),
    };
    if options.check {
        let mismatches = check_against_reference(&rows);
        if !mismatches.is_empty() {
            let mut text = text;
            text.push_str("\ncheck failed:\n");
            for m in &mismatches {
                writeln!(text, "  {m}").unwrap();
            }
            return Ok(CommandOutput { text, exit_code: 1 });
        }
    }
    Ok(ok(text))
}

fn verdict_letters(verdict: &TestVerdict) -> String {
    let letter = |b: bool| if b { "V" } else { "X" };
    let (a, b, c) = verdict.as_booleans();
    format!("{} {} {}", letter(a), letter(b), letter(c))
}

fn tau_display(result: &TauResult) -> String {
    let marker = match result.provenance {
        TauProvenance::Empirical => "",
        TauProvenance::Analytic | TauProvenance::ConstantScore => "\u{2020}",
    };
    format!("{:.3}{marker}", result.tau)
}

fn render_table_markdown(rows: &[TableRow]) -> String {
    let mut out = String::new();
    out.push_str("| score |");
    for cell in &rows[0].cells {
        write!(out, " {} (t1 t2 t3 / tau_min / tau_max) |", constraint_label(cell.constraint))
            .unwrap();
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in &rows[0].cells {
        out.push_str("---|");
    }
    out.push('\n');
    for row in rows {
        write!(out, "| {} |", row.name).unwrap();
        for cell in &row.cells {
            write!(
                out,
                " {} / {} / {} |",
                verdict_letters(&cell.verdict),
                tau_display(&cell.tau_min),
                tau_display(&cell.tau_max)
            )
            .unwrap();
        }
        out.push('\n');
    }
    out
}

fn render_table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(
        "score,constraint,test1,test2,test3,tau_min,tau_min_a,tau_min_b,tau_min_analytic,\
         tau_max,tau_max_a,tau_max_b,tau_max_analytic\n",
    );
    for row in rows {
        for cell in &row.cells {
            let (t1, t2, t3) = cell.verdict.as_booleans();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                row.name,
                constraint_label(cell.constraint),
                t1,
                t2,
                t3,
                json::format_f64(cell.tau_min.tau),
                json::format_f64(cell.tau_min.a),
                json::format_f64(cell.tau_min.b),
                cell.tau_min.provenance != TauProvenance::Empirical,
                json::format_f64(cell.tau_max.tau),
                json::format_f64(cell.tau_max.a),
                json::format_f64(cell.tau_max.b),
                cell.tau_max.provenance != TauProvenance::Empirical,
            )
            .unwrap();
        }
    }
    out
}

fn tau_json(result: &TauResult) -> Value {
    json::object(vec![
        ("tau", json::float(result.tau)),
        ("a", json::float(result.a)),
        ("b", json::float(result.b)),
        (
            "analytic",
            Value::Bool(result.provenance != TauProvenance::Empirical),
        ),
    ])
}

fn constraint_json(constraint: ConstraintSet) -> Vec<(&'static str, Value)> {
    match constraint {
        ConstraintSet::Unconstrained => vec![
            ("constraint", Value::String("unconstrained".into())),
            ("prior", Value::Null),
        ],
        ConstraintSet::FixedPositivePrior(p) => vec![
            ("constraint", Value::String("fixed_positive_prior".into())),
            ("prior", json::float(p)),
        ],
    }
}

fn render_table_json(rows: &[TableRow], options: &TableOptions) -> String {
    let mut row_values = Vec::with_capacity(rows.len());
    for row in rows {
        let mut cell_values = Vec::with_capacity(row.cells.len());
        for cell in &row.cells {
            let (t1, t2, t3) = cell.verdict.as_booleans();
            let mut fields = constraint_json(cell.constraint);
            fields.push(("test1", Value::Bool(t1)));
            fields.push(("test2", Value::Bool(t2)));
            fields.push(("test3", Value::Bool(t3)));
            fields.push(("tau_min", tau_json(&cell.tau_min)));
            fields.push(("tau_max", tau_json(&cell.tau_max)));
            cell_values.push(json::object(fields));
        }
        row_values.push(json::object(vec![
            ("score", Value::String(row.name.into())),
            ("label", Value::String(row.label.into())),
            ("cells", Value::Array(cell_values)),
        ]));
    }
    let doc = json::object(vec![
        (
            "resolution",
            match options.resolution {
                Some(r) => Value::Number(u64::from(r).into()),
                None => Value::Null,
            },
        ),
        ("seed", Value::Number(options.seed.into())),
        ("rows", Value::Array(row_values)),
    ]);
    json::render(&doc) + "\n"
}

// ---------------------------------------------------------------------------
// audit

pub struct AuditOptions {
    pub score: ScoreChoice,
    pub constraint: ConstraintSet,
    pub resolution: Option<u32>,
    pub seed: u64,
}

pub fn run_audit(options: &AuditOptions, format: OutputFormat) -> Result<CommandOutput, UsageError> {
    let resolved = resolve_score(&options.score)?;
    let setting = TwoClass::new();
    let config = audit_config(options.seed);
    let resolution = options
        .resolution
        .unwrap_or_else(|| options.constraint.default_resolution());
    let grid = make_grid(setting.space(), options.constraint, resolution)?;
    let verdict = audit_score_on_grid(&resolved.score, setting.satisfaction(), &grid, &config)?;
    let text = match format {
        OutputFormat::Json => render_audit_json(&resolved.display, options, &verdict),
        OutputFormat::Csv => render_audit_csv(&resolved.display, options, &verdict),
        OutputFormat::Markdown => render_audit_markdown(&resolved.display, options, &verdict),
    };
    Ok(ok(text))
}

fn first_failure(verdict: &TestVerdict) -> Option<(u8, &Counterexample)> {
    [
        (1u8, &verdict.test1),
        (2u8, &verdict.test2),
        (3u8, &verdict.test3),
    ]
    .into_iter()
    .find_map(|(index, outcome)| {
        outcome
            .counterexample
            .as_ref()
            .map(|witness| (index, witness))
    })
}

fn probs_json(probs: &[f64]) -> Value {
    Value::Array(probs.iter().map(|p| json::float(*p)).collect())
}

fn counterexample_json(witness: &Counterexample) -> Value {
    match witness {
        Counterexample::OrderViolation {
            p1,
            p2,
            score1,
            score2,
        } => json::object(vec![
            ("kind", Value::String("order".into())),
            ("p1", probs_json(p1)),
            ("p2", probs_json(p2)),
            ("score1", json::float(*score1)),
            ("score2", json::float(*score2)),
        ]),
        Counterexample::MixtureViolation {
            p1,
            p2,
            lambda,
            mixture,
            score1,
            score2,
            mixture_score,
            side,
        } => json::object(vec![
            ("kind", Value::String("mixture".into())),
            (
                "side",
                Value::String(
                    match side {
                        MixtureSide::AboveMax => "above_max",
                        MixtureSide::BelowMin => "below_min",
                    }
                    .into(),
                ),
            ),
            ("p1", probs_json(p1)),
            ("p2", probs_json(p2)),
            ("lambda", json::float(*lambda)),
            ("mixture", probs_json(mixture)),
            ("score1", json::float(*score1)),
            ("score2", json::float(*score2)),
            ("mixture_score", json::float(*mixture_score)),
        ]),
    }
}

fn render_audit_json(display: &str, options: &AuditOptions, verdict: &TestVerdict) -> String {
    let (t1, t2, t3) = verdict.as_booleans();
    let mut fields = vec![("score", Value::String(display.into()))];
    fields.extend(constraint_json(options.constraint));
    fields.push(("test1", Value::Bool(t1)));
    fields.push(("test2", Value::Bool(t2)));
    fields.push(("test3", Value::Bool(t3)));
    match first_failure(verdict) {
        Some((index, witness)) => {
            fields.push((
                "failed_test",
                Value::Number(u64::from(index).into()),
            ));
            fields.push(("counterexample", counterexample_json(witness)));
        }
        None => {
            fields.push(("failed_test", Value::Null));
            fields.push(("counterexample", Value::Null));
        }
    }
    json::render(&json::object(fields)) + "\n"
}

fn render_audit_csv(display: &str, options: &AuditOptions, verdict: &TestVerdict) -> String {
    let (t1, t2, t3) = verdict.as_booleans();
    format!(
        "score,constraint,test1,test2,test3\n\"{}\",{},{},{},{}\n",
        display.replace('"', "\"\""),
        constraint_label(options.constraint),
        t1,
        t2,
        t3
    )
}

fn describe_counterexample(witness: &Counterexample) -> String {
    let vector = |probs: &[f64]| {
        let entries: Vec<String> = probs.iter().map(|p| format!("{p:.6}")).collect();
        format!("({})", entries.join(", "))
    };
    match witness {
        Counterexample::OrderViolation {
            p1,
            p2,
            score1,
            score2,
        } => format!(
            "P1 = {} scores {score1:.6}, above P2 = {} at {score2:.6}, \
             where the satisfaction ordering demands P1 <= P2",
            vector(p1),
            vector(p2)
        ),
        Counterexample::MixtureViolation {
            p1,
            p2,
            lambda,
            mixture,
            score1,
            score2,
            mixture_score,
            side,
        } => {
            let relation = match side {
                MixtureSide::AboveMax => "above both endpoints",
                MixtureSide::BelowMin => "below both endpoints",
            };
            format!(
                "mixture {} = {:.2}*P1 + {:.2}*P2 of P1 = {} ({score1:.6}) and \
                 P2 = {} ({score2:.6}) scores {mixture_score:.6}, {relation}",
                vector(mixture),
                lambda,
                1.0 - lambda,
                vector(p1),
                vector(p2)
            )
        }
    }
}

fn render_audit_markdown(display: &str, options: &AuditOptions, verdict: &TestVerdict) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "audit of `{display}` on {}",
        constraint_label(options.constraint)
    )
    .unwrap();
    let tests = [
        ("test1 (satisfaction ordering)", &verdict.test1),
        ("test2 (mixtures bounded above)", &verdict.test2),
        ("test3 (mixtures bounded below)", &verdict.test3),
    ];
    for (name, outcome) in tests {
        if outcome.passed {
            writeln!(out, "  {name}: V").unwrap();
        } else {
            writeln!(out, "  {name}: X").unwrap();
            if let Some(witness) = &outcome.counterexample {
                writeln!(out, "    witness: {}", describe_counterexample(witness)).unwrap();
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// tau

pub struct TauOptions {
    pub score: ScoreChoice,
    pub constraint: ConstraintSet,
    pub objective: Objective,
    pub resolution: Option<u32>,
    pub seed: u64,
}

pub fn run_tau(options: &TauOptions, format: OutputFormat) -> Result<CommandOutput, UsageError> {
    let resolved = resolve_score(&options.score)?;
    let setting = TwoClass::new();
    let resolution = options
        .resolution
        .unwrap_or_else(|| options.constraint.default_resolution());
    let grid = make_grid(setting.space(), options.constraint, resolution)?;
    let search = DirectSearchConfig::default();
    let result = match &resolved.entry {
        Some(entry) => optimize_tau_for_entry(entry, &grid, options.objective, &search)?,
        None => optimize_tau(&resolved.score, &grid, options.objective, &search)?,
    };
    let text = match format {
        OutputFormat::Json => render_tau_json(&resolved.display, options, &result),
        OutputFormat::Csv => render_tau_csv(&resolved.display, options, &result),
        OutputFormat::Markdown => render_tau_markdown(&resolved.display, options, &result),
    };
    Ok(ok(text))
}

fn objective_name(objective: Objective) -> &'static str {
    match objective {
        Objective::Min => "min",
        Objective::Max => "max",
    }
}

fn render_tau_json(display: &str, options: &TauOptions, result: &TauResult) -> String {
    let importance = result.importance();
    let mut fields = vec![("score", Value::String(display.into()))];
    fields.extend(constraint_json(options.constraint));
    fields.push((
        "objective",
        Value::String(objective_name(options.objective).into()),
    ));
    fields.push(("tau", json::float(result.tau)));
    fields.push(("a", json::float(result.a)));
    fields.push(("b", json::float(result.b)));
    fields.push(("importance", probs_json(&importance)));
    fields.push((
        "analytic",
        Value::Bool(result.provenance != TauProvenance::Empirical),
    ));
    json::render(&json::object(fields)) + "\n"
}

fn render_tau_csv(display: &str, options: &TauOptions, result: &TauResult) -> String {
    let importance = result.importance();
    format!(
        "score,constraint,objective,tau,a,b,i_tn,i_fp,i_fn,i_tp,analytic\n\
         \"{}\",{},{},{},{},{},{},{},{},{},{}\n",
        display.replace('"', "\"\""),
        constraint_label(options.constraint),
        objective_name(options.objective),
        json::format_f64(result.tau),
        json::format_f64(result.a),
        json::format_f64(result.b),
        json::format_f64(importance[0]),
        json::format_f64(importance[1]),
        json::format_f64(importance[2]),
        json::format_f64(importance[3]),
        result.provenance != TauProvenance::Empirical,
    )
}

fn render_tau_markdown(display: &str, options: &TauOptions, result: &TauResult) -> String {
    let importance = result.importance();
    format!(
        "tau_{} of `{display}` on {}: {}\n  (a, b) = ({:.6}, {:.6}); \
         importance (tn, fp, fn, tp) = ({:.4}, {:.4}, {:.4}, {:.4})\n",
        objective_name(options.objective),
        constraint_label(options.constraint),
        tau_display(result),
        result.a,
        result.b,
        importance[0],
        importance[1],
        importance[2],
        importance[3],
    )
}

// ---------------------------------------------------------------------------
// rank

pub struct RankOptions {
    pub score: ScoreChoice,
}

/// Parses the entity CSV: header `id,p_tn,p_fp,p_fn,p_tp`, one entity per
/// row. Collects all row errors instead of stopping at the first.
pub fn parse_entity_csv(text: &str) -> Result<Vec<EntityRecord>, UsageError> {
    let space = perfrank::two_class_space();
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) if line.trim().is_empty() => continue,
            Some((_, line)) => break line,
            None => return Err(UsageError("empty input file".into())),
        }
    };
    let normalized: String = header.split(',').map(str::trim).collect::<Vec<_>>().join(",");
    if normalized != "id,p_tn,p_fp,p_fn,p_tp" {
        return Err(UsageError(format!(
            "expected header `id,p_tn,p_fp,p_fn,p_tp`, got `{header}`"
        )));
    }
    let mut entities = Vec::new();
    let mut errors = Vec::new();
    for (index, line) in lines {
        let line_number = index + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            errors.push(format!("line {line_number}: expected 5 fields, got {}", fields.len()));
            continue;
        }
        let mut probs = Vec::with_capacity(4);
        let mut field_error = false;
        for raw in &fields[1..] {
            match raw.parse::<f64>() {
                Ok(v) => probs.push(v),
                Err(_) => {
                    errors.push(format!("line {line_number}: `{raw}` is not a number"));
                    field_error = true;
                    break;
                }
            }
        }
        if field_error {
            continue;
        }
        match Performance::new(&space, probs) {
            Ok(performance) => entities.push(EntityRecord::new(fields[0], performance)),
            Err(e) => errors.push(format!("line {line_number}: {e}")),
        }
    }
    if !errors.is_empty() {
        return Err(UsageError(errors.join("\n")));
    }
    Ok(entities)
}

pub fn run_rank(
    options: &RankOptions,
    csv_text: &str,
    format: OutputFormat,
) -> Result<CommandOutput, UsageError> {
    let resolved = resolve_score(&options.score)?;
    let entities = parse_entity_csv(csv_text)?;
    let bounds = rank_bounds(&entities, &resolved.score)?;

    struct Line {
        id: String,
        lower: usize,
        upper: usize,
        value: Option<f64>,
    }
    let mut rows: Vec<Line> = entities
        .iter()
        .map(|e| {
            let b = bounds[&e.id];
            Line {
                id: e.id.clone(),
                lower: b.lower,
                upper: b.upper,
                value: resolved.score.eval(&e.performance).unwrap(),
            }
        })
        .collect();
    rows.sort_by(|x, y| (x.lower, x.upper, &x.id).cmp(&(y.lower, y.upper, &y.id)));

    let text = match format {
        OutputFormat::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|row| {
                    json::object(vec![
                        ("id", Value::String(row.id.clone())),
                        ("rank", Value::Number((row.lower as u64).into())),
                        ("lower", Value::Number((row.lower as u64).into())),
                        ("upper", Value::Number((row.upper as u64).into())),
                        (
                            "value",
                            row.value.map(json::float).unwrap_or(Value::Null),
                        ),
                        ("incomparable", Value::Bool(row.value.is_none())),
                    ])
                })
                .collect();
            let doc = json::object(vec![
                ("score", Value::String(resolved.display.clone())),
                ("entities", Value::Array(values)),
            ]);
            json::render(&doc) + "\n"
        }
        OutputFormat::Csv => {
            let mut out = String::from("id,rank,lower,upper,value,incomparable\n");
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    row.id,
                    row.lower,
                    row.lower,
                    row.upper,
                    row.value.map(json::format_f64).unwrap_or_default(),
                    row.value.is_none()
                )
                .unwrap();
            }
            out
        }
        OutputFormat::Markdown => {
            let mut out = String::from("| id | rank | bounds | value |\n|---|---|---|---|\n");
            for row in &rows {
                let value = match row.value {
                    Some(v) => format!("{v:.6}"),
                    None => "incomparable".to_string(),
                };
                writeln!(
                    out,
                    "| {} | {} | {}-{} | {} |",
                    row.id, row.lower, row.lower, row.upper, value
                )
                .unwrap();
            }
            out
        }
    };
    Ok(ok(text))
}

// ---------------------------------------------------------------------------
// grid

pub struct GridOptions {
    pub constraint: ConstraintSet,
    pub resolution: Option<u32>,
}

pub fn run_grid(options: &GridOptions) -> Result<CommandOutput, UsageError> {
    let setting = TwoClass::new();
    let resolution = options
        .resolution
        .unwrap_or_else(|| options.constraint.default_resolution());
    let grid = make_grid(setting.space(), options.constraint, resolution)?;
    Ok(ok(grid.to_csv()))
}
