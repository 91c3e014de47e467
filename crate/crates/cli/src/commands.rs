use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use nearconf::format::{
    realization_from_json, realization_to_json, structure_from_json, structure_to_json,
    RealizationDocument,
};
use nearconf::{
    catalog, cyclic_config, decide_realizability, isomorphic, levi, near_config,
    non_geometric_compound, peel as peel_levi, render_svg, search_structures, to_affine,
    verify_realization, DecideError, IncidenceStructure, RealizabilityStatus, RealizeError,
    ReplayError, SearchError, SearchOptions, Signature, SvgOptions, Witness,
};

pub const OK: u8 = 0;
pub const FAILURE: u8 = 1;
pub const INVALID: u8 = 2;
pub const NOT_REALIZABLE: u8 = 3;
pub const UNKNOWN: u8 = 4;
pub const EXHAUSTED: u8 = 5;

pub struct Context {
    pub seed: u64,
    pub force: bool,
}

/// Outcome of one subcommand in both output formats.
pub struct CommandResult {
    pub exit_code: u8,
    /// Written to stdout in human mode.
    pub human_text: String,
    /// Written to stderr in human mode.
    pub notes: String,
    pub error: Option<String>,
    fields: Map<String, Value>,
}

impl CommandResult {
    fn new(exit_code: u8) -> Self {
        CommandResult { exit_code, human_text: String::new(), notes: String::new(), error: None, fields: Map::new() }
    }

    fn fail(exit_code: u8, message: impl Into<String>) -> Self {
        let mut r = CommandResult::new(exit_code);
        r.error = Some(message.into());
        r
    }

    /// Adds a human line and the matching machine field.
    fn line(&mut self, key: &str, label: &str, value: impl std::fmt::Display, machine: Value) {
        self.human_text += &format!("{label}: {value}\n");
        self.fields.insert(key.into(), machine);
    }

    fn field(&mut self, key: &str, value: Value) {
        self.fields.insert(key.into(), value);
    }

    pub fn machine_report(&self) -> Value {
        let mut m = Map::new();
        m.insert("exit_code".into(), json!(self.exit_code));
        m.insert("ok".into(), json!(self.exit_code == OK));
        if let Some(e) = &self.error {
            m.insert("error".into(), json!(e));
        }
        m.extend(self.fields.clone());
        Value::Object(m)
    }
}

type Step<T> = Result<T, CommandResult>;

fn read(path: &Path) -> Step<String> {
    fs::read_to_string(path)
        .map_err(|e| CommandResult::fail(FAILURE, format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Step<()> {
    fs::write(path, text)
        .map_err(|e| CommandResult::fail(FAILURE, format!("cannot write {}: {e}", path.display())))
}

fn load_structure(path: &Path) -> Step<IncidenceStructure> {
    structure_from_json(&read(path)?)
        .map_err(|e| CommandResult::fail(FAILURE, format!("{}: {e}", path.display())))
}

fn load_realization(s: &IncidenceStructure, path: &Path) -> Step<RealizationDocument> {
    realization_from_json(s, &read(path)?)
        .map_err(|e| CommandResult::fail(FAILURE, format!("{}: {e}", path.display())))
}

fn finish(r: Step<CommandResult>) -> CommandResult {
    r.unwrap_or_else(|e| e)
}

fn witness_name(w: &Witness) -> String {
    w.catalog_name
        .clone()
        .unwrap_or_else(|| format!("uncatalogued ({}_3) configuration", w.points.len()))
}

fn witness_json(s: &IncidenceStructure, w: &Witness) -> Value {
    json!({
        "name": witness_name(w),
        "bridge": w.bridge.map(|(p, l)| json!({"point": s.point_name(p), "line": s.line_names(l)})),
        "points": w.points.iter().map(|&p| s.point_name(p)).collect::<Vec<_>>(),
    })
}

fn realize_failure(s: &IncidenceStructure, e: &RealizeError) -> CommandResult {
    let code = match e {
        RealizeError::NotNearConfig => INVALID,
        RealizeError::NotRealizable(_) => NOT_REALIZABLE,
        RealizeError::Unknown(_) => UNKNOWN,
        RealizeError::Replay(ReplayError::RetriesExhausted { .. }) => EXHAUSTED,
        RealizeError::Replay(_) => FAILURE,
    };
    let mut r = CommandResult::fail(code, e.to_string());
    if let RealizeError::NotRealizable(w) | RealizeError::Unknown(w) = e {
        r.field("witness", witness_json(s, w));
    }
    r
}

fn build(kind: &str, n: Option<usize>) -> Step<IncidenceStructure> {
    if let Some(name) = kind.strip_prefix("catalog:") {
        return catalog().get(name).map(|e| e.structure.clone()).ok_or_else(|| {
            let known: Vec<&str> = catalog().names().collect();
            CommandResult::fail(INVALID, format!("no catalog entry {name:?}; known: {}", known.join(", ")))
        });
    }
    let n = n.ok_or_else(|| CommandResult::fail(INVALID, format!("{kind} needs a size")))?;
    let built = match kind {
        "cyclic" => cyclic_config(n),
        "near" => near_config(n),
        "compound-nongeo" => non_geometric_compound(n),
        _ => {
            return Err(CommandResult::fail(
                INVALID,
                format!("unknown kind {kind:?}; use cyclic, near, compound-nongeo or catalog:<name>"),
            ))
        }
    };
    built.map_err(|e| CommandResult::fail(INVALID, e.to_string()))
}

pub fn construct(
    _ctx: &Context,
    kind: &str,
    n: Option<usize>,
    out: Option<&Path>,
    realization: Option<&Path>,
) -> CommandResult {
    finish((|| {
        let s = build(kind, n)?;
        let text = structure_to_json(&s);
        let mut r = CommandResult::new(OK);
        if let Some(path) = realization {
            let coordinates = kind
                .strip_prefix("catalog:")
                .and_then(|name| catalog().get(name))
                .and_then(|e| e.coordinates.clone())
                .ok_or_else(|| CommandResult::fail(INVALID, format!("{kind} has no stored coordinates")))?;
            let doc = RealizationDocument { realization: coordinates, seed: None, chart: None };
            write(path, &realization_to_json(&s, &doc))?;
            r.notes += &format!("realization: {}\n", path.display());
            r.field("realization", json!(path.display().to_string()));
        }
        let sig = s.signature();
        match out {
            Some(path) => {
                write(path, &text)?;
                r.line("signature", "signature", &sig, json!(sig.to_string()));
                r.line("path", "written", path.display(), json!(path.display().to_string()));
            }
            None => {
                r.human_text = text;
                r.notes += &format!("signature: {sig}\n");
                r.field("signature", json!(sig.to_string()));
                r.field("structure", serde_json::from_str(&structure_to_json(&s)).expect("own output"));
            }
        }
        Ok(r)
    })())
}

pub fn check(_ctx: &Context, path: &Path) -> CommandResult {
    finish((|| {
        let s = load_structure(path)?;
        let mut r = CommandResult::new(OK);
        let g = levi(&s);
        r.line("valid", "valid", "yes", json!(true));
        r.line("points", "points", s.point_count(), json!(s.point_count()));
        r.line("lines", "lines", s.line_count(), json!(s.line_count()));
        let sig = s.signature();
        r.line("signature", "signature", &sig, json!(sig.to_string()));
        let near = s.is_near_config();
        r.line("near_config", "near-configuration", if near { "yes" } else { "no" }, json!(near));
        let girth = g.girth();
        r.line("girth", "girth", girth, json!(girth.to_string()));
        let bridges = g.bridges().len();
        r.line("bridges", "bridges", bridges, json!(bridges));
        match decide_realizability(&s, catalog()) {
            Err(DecideError::NotNearConfig) => {
                r.line("verdict", "verdict", "not applicable", Value::Null);
            }
            Err(e @ DecideError::Uncertified(_)) => {
                r.line("verdict", "verdict", "Realizable (uncertified)", json!("Realizable"));
                r.exit_code = EXHAUSTED;
                r.error = Some(e.to_string());
            }
            Ok(v) => {
                let status = format!("{:?}", v.status);
                match &v.witness {
                    Some(w) => {
                        r.line("verdict", "verdict", format!("{status} (witness: {})", witness_name(w)), json!(status));
                        r.field("witness", witness_json(&s, w));
                    }
                    None => r.line("verdict", "verdict", &status, json!(status)),
                }
                r.exit_code = match v.status {
                    RealizabilityStatus::Realizable => OK,
                    RealizabilityStatus::NotRealizable => NOT_REALIZABLE,
                    RealizabilityStatus::Unknown => UNKNOWN,
                };
            }
        }
        Ok(r)
    })())
}

pub fn realize(ctx: &Context, path: &Path, out: Option<&Path>, svg: Option<&Path>) -> CommandResult {
    finish((|| {
        let s = load_structure(path)?;
        let real = nearconf::realize(&s, ctx.seed).map_err(|e| realize_failure(&s, &e))?;
        let report = verify_realization(&s, &real).expect("realize returns one coordinate per object");
        let chart = to_affine(&real, ctx.seed);
        let mut r = CommandResult::new(if report.is_clean() { OK } else { FAILURE });
        if let Some(out) = out {
            let doc = RealizationDocument { realization: real.clone(), seed: Some(ctx.seed), chart: Some(chart.matrix) };
            write(out, &realization_to_json(&s, &doc))?;
            r.line("realization", "realization", out.display(), json!(out.display().to_string()));
        }
        if let Some(svg) = svg {
            write(svg, &render_svg(&s, &real, &SvgOptions { chart_seed: ctx.seed, ..SvgOptions::default() }))?;
            r.line("svg", "svg", svg.display(), json!(svg.display().to_string()));
        }
        r.line("seed", "seed", ctx.seed, json!(ctx.seed));
        r.line("max_bits", "largest coordinate", format!("{} bits", real.max_bits()), json!(real.max_bits()));
        r.line("verification", "verification", &report, report_json(&report));
        Ok(r)
    })())
}

fn report_json(report: &nearconf::Report) -> Value {
    json!({
        "summary": report.to_string(),
        "missed": report.missed.len(),
        "unwanted": report.unwanted.len(),
        "coincident_points": report.coincident_points.len(),
        "coincident_lines": report.coincident_lines.len(),
        "realized": report.realized,
        "total": report.total,
    })
}

pub fn verify(structure: &Path, realization: &Path) -> CommandResult {
    finish((|| {
        let s = load_structure(structure)?;
        let doc = load_realization(&s, realization)?;
        let report = verify_realization(&s, &doc.realization)
            .map_err(|e| CommandResult::fail(FAILURE, e.to_string()))?;
        let mut r = CommandResult::new(if report.is_clean() { OK } else { FAILURE });
        r.human_text = report.describe(&s);
        let mut details = report_json(&report);
        let item = |p: usize, l: usize| json!({"point": s.point_name(p), "line": s.line_names(l)});
        details["missed_items"] = report.missed.iter().map(|&(p, l)| item(p, l)).collect();
        details["unwanted_items"] = report.unwanted.iter().map(|&(p, l)| item(p, l)).collect();
        details["detail"] = json!(r.human_text);
        r.field("verification", details);
        Ok(r)
    })())
}

pub fn peel(path: &Path) -> CommandResult {
    finish((|| {
        let s = load_structure(path)?;
        let trace = peel_levi(&levi(&s));
        let mut r = CommandResult::new(OK);
        r.human_text = trace.to_text();
        r.field("complete", json!(trace.is_complete()));
        r.field("trace", json!(r.human_text));
        Ok(r)
    })())
}

pub fn dual(path: &Path, out: Option<&Path>) -> CommandResult {
    finish((|| {
        let s = load_structure(path)?;
        let d = s.dual().map_err(|e| CommandResult::fail(FAILURE, e.to_string()))?;
        let text = structure_to_json(&d);
        let mut r = CommandResult::new(OK);
        let sig = d.signature();
        match out {
            Some(out) => {
                write(out, &text)?;
                r.line("signature", "signature", &sig, json!(sig.to_string()));
                r.line("path", "written", out.display(), json!(out.display().to_string()));
            }
            None => {
                r.human_text = text;
                r.notes += &format!("signature: {sig}\n");
                r.field("signature", json!(sig.to_string()));
                r.field("structure", serde_json::from_str(&structure_to_json(&d)).expect("own output"));
            }
        }
        Ok(r)
    })())
}

pub fn iso(a: &Path, b: &Path) -> CommandResult {
    finish((|| {
        let sa = load_structure(a)?;
        let sb = load_structure(b)?;
        let mut r = CommandResult::new(OK);
        match isomorphic(&sa, &sb) {
            Some(m) => {
                r.line("isomorphic", "isomorphic", "yes", json!(true));
                let pairs: Map<String, Value> = m
                    .points
                    .iter()
                    .enumerate()
                    .map(|(p, &q)| (sa.point_name(p).to_string(), json!(sb.point_name(q))))
                    .collect();
                for (from, to) in &pairs {
                    r.human_text += &format!("{from} -> {}\n", to.as_str().unwrap_or_default());
                }
                r.field("points", Value::Object(pairs));
            }
            None => r.line("isomorphic", "isomorphic", "no", json!(false)),
        }
        Ok(r)
    })())
}

pub fn search(ctx: &Context, n: usize, out_dir: Option<&Path>) -> CommandResult {
    finish((|| {
        let options = SearchOptions { force: ctx.force, ..SearchOptions::default() };
        let found = search_structures(n, &Signature::near(n), &options).map_err(|e| match e {
            SearchError::TooLarge { .. } => CommandResult::fail(INVALID, e.to_string()),
            SearchError::SearchBudgetExceeded { .. } => CommandResult::fail(EXHAUSTED, e.to_string()),
        })?;
        let mut r = CommandResult::new(OK);
        r.human_text = format!("{} structures\n", found.len());
        r.field("count", json!(found.len()));
        if let Some(dir) = out_dir {
            fs::create_dir_all(dir).map_err(|e| CommandResult::fail(FAILURE, format!("cannot create {}: {e}", dir.display())))?;
            let mut files = Vec::new();
            for (i, s) in found.iter().enumerate() {
                let path = dir.join(format!("near{n}-{}.json", i + 1));
                write(&path, &structure_to_json(s))?;
                r.human_text += &format!("written: {}\n", path.display());
                files.push(path.display().to_string());
            }
            r.field("files", json!(files));
        }
        Ok(r)
    })())
}

pub fn render(ctx: &Context, structure: &Path, realization: &Path, out: Option<&Path>) -> CommandResult {
    finish((|| {
        let s = load_structure(structure)?;
        let doc = load_realization(&s, realization)?;
        let svg = render_svg(&s, &doc.realization, &SvgOptions { chart_seed: ctx.seed, ..SvgOptions::default() });
        let mut r = CommandResult::new(OK);
        match out {
            Some(out) => {
                write(out, &svg)?;
                r.line("svg", "svg", out.display(), json!(out.display().to_string()));
            }
            None => {
                r.human_text = svg;
                r.field("svg", json!(r.human_text));
            }
        }
        Ok(r)
    })())
}
