use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use nslattice::counting::{self, Method, Property, GRH_NOTE};
use nslattice::forms::{gl2_class_number, two_torsion_count, ClassGroupTable};
use nslattice::oracle::{self, VerifyReport};
use nslattice::Error;

const CLASSGROUP_GUARD: i64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "nslattice",
    version,
    about = "Polarizations on products of isogenous elliptic curves"
)]
struct Cli {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress the version header.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classes of primitive forms of discriminant D.
    Classgroup {
        #[arg(allow_negative_numbers = true)]
        disc: i64,
    },
    /// Orbits of polarizations of degree d on A_m.
    Count {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        d: i64,
        /// Count by enumeration even where a formula applies.
        #[arg(long)]
        oracle: bool,
    },
    /// Whether A_m carries a smooth or very ample polarization of degree d.
    Exists {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, value_enum)]
        property: PropertyArg,
    },
    /// Every orbit of degree d with its type and form image.
    Classify {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        d: i64,
    },
    /// The exceptional lists.
    Lists {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Compare every closed formula with the enumeration.
    Verify {
        #[arg(long)]
        m_max: i64,
        #[arg(long)]
        d_max: i64,
    },
    /// Counts on a product of non-isogenous curves.
    Pr2 {
        #[arg(long)]
        d: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PropertyArg {
    Smooth,
    VeryAmple,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Smooth => Property::Smooth,
            PropertyArg::VeryAmple => Property::VeryAmple,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Which {
    Star,
    Idoneal,
    P4,
}

impl Which {
    fn default_bound(self) -> i64 {
        match self {
            Which::Star => 2000,
            Which::Idoneal => 1848,
            Which::P4 => 400,
        }
    }
}

/// Command echo, parameters, notes and method, with the payload's fields
/// merged in at the top level.
struct CommandResult {
    command: &'static str,
    parameters: Value,
    payload: Value,
    notes: Vec<String>,
    method: Option<Method>,
    human: String,
    failed: bool,
}

impl CommandResult {
    fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("parameters".into(), self.parameters.clone());
        if let Some(m) = self.method {
            out.insert("method".into(), json!(m));
        }
        out.insert("notes".into(), json!(self.notes));
        if let Value::Object(p) = &self.payload {
            for (k, v) in p {
                out.insert(k.clone(), v.clone());
            }
        }
        Value::Object(out)
    }
}

fn classgroup(disc: i64) -> nslattice::Result<CommandResult> {
    if disc.checked_abs().is_none_or(|a| a > CLASSGROUP_GUARD) {
        return Err(Error::Guard(format!("|D| exceeds {CLASSGROUP_GUARD}")));
    }
    let table = ClassGroupTable::build(disc)?;
    let h_plus = gl2_class_number(disc)?;
    let h2 = two_torsion_count(disc)?;
    let classes: Vec<Value> = table
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| json!({"form": c.canonical, "order": table.order(i)}))
        .collect();
    let mut human = format!(
        "D = {disc}: h = {}, h+ = {h_plus}, h2 = {h2}\n",
        table.len()
    );
    let _ = writeln!(human, "{:<24} order", "form");
    for (i, c) in table.classes.iter().enumerate() {
        let _ = writeln!(human, "{:<24} {}", c.canonical.to_string(), table.order(i));
    }
    Ok(CommandResult {
        command: "classgroup",
        parameters: json!({"disc": disc}),
        payload: json!({"disc": disc, "h": table.len(), "h_plus": h_plus, "h2": h2, "classes": classes}),
        notes: vec![],
        method: None,
        human,
        failed: false,
    })
}

fn count(m: i64, d: i64, force_oracle: bool) -> nslattice::Result<CommandResult> {
    let r = counting::count_report(m, d, force_oracle)?;
    let va = r.very_ample.map_or("-".to_string(), |v| v.to_string());
    let human = format!(
        "m = {m}, d = {d} ({})\n{:<12} {}\n{:<12} {}\n{:<12} {}\n{:<12} {}\n",
        json!(r.method).as_str().unwrap_or_default(),
        "total",
        r.total,
        "nonsmooth",
        r.nonsmooth,
        "smooth",
        r.smooth,
        "very ample",
        va,
    );
    Ok(CommandResult {
        command: "count",
        parameters: json!({"m": m, "d": d, "oracle": force_oracle}),
        payload: serde_json::to_value(&r).expect("serializable"),
        notes: vec![],
        method: Some(r.method),
        human,
        failed: false,
    })
}

fn exists(m: i64, d: i64, property: PropertyArg) -> nslattice::Result<CommandResult> {
    let p: Property = property.into();
    let v = match p {
        Property::Smooth => counting::exists_smooth(m, d)?,
        Property::VeryAmple => counting::exists_very_ample(m, d)?,
    };
    let mut human = format!(
        "m = {m}, d = {d}, {}: {}\nbranch: {}\n",
        json!(p).as_str().unwrap_or_default(),
        if v.answer { "yes" } else { "no" },
        v.branch
    );
    if let Some(note) = &v.note {
        let _ = writeln!(human, "note: {note}");
    }
    Ok(CommandResult {
        command: "exists",
        parameters: json!({"m": m, "d": d, "property": p}),
        payload: serde_json::to_value(&v).expect("serializable"),
        notes: vec![],
        method: Some(Method::Formula),
        human,
        failed: false,
    })
}

fn classify(m: i64, d: i64) -> nslattice::Result<CommandResult> {
    let r = oracle::enumerate_orbits(m, d)?;
    let mut human = format!(
        "m = {m}, d = {d}: {} orbits ({} nonsmooth, {} smooth, {} very ample)\n",
        r.total(),
        r.nonsmooth(),
        r.smooth(),
        r.very_ample()
    );
    let _ = writeln!(human, "{:<28} {:<20} {:>5}  psi", "class", "tag", "min");
    for o in &r.orbits {
        let image = o.psi_image.map_or("-".to_string(), |p| {
            format!("g = {}, {}", p.g, p.class.canonical)
        });
        let _ = writeln!(
            human,
            "{:<28} {:<20} {:>5}  {image}",
            o.representative.to_string(),
            o.tag.as_str(),
            o.min_intersection
        );
    }
    let mut payload = serde_json::to_value(&r).expect("serializable");
    payload["summary"] = json!({
        "total": r.total(),
        "nonsmooth": r.nonsmooth(),
        "smooth": r.smooth(),
        "smooth_merely_ample": r.smooth_merely_ample(),
        "very_ample": r.very_ample(),
    });
    Ok(CommandResult {
        command: "classify",
        parameters: json!({"m": m, "d": d}),
        payload,
        notes: vec![],
        method: Some(Method::Oracle),
        human,
        failed: false,
    })
}

fn lists(which: Which, bound: Option<i64>) -> nslattice::Result<CommandResult> {
    let bound = bound.unwrap_or(which.default_bound());
    if bound > oracle::ORBIT_GUARD * 10 {
        return Err(Error::Guard(format!(
            "bound exceeds {}",
            oracle::ORBIT_GUARD * 10
        )));
    }
    let values = match which {
        Which::Star => counting::star_list(bound)?,
        Which::Idoneal => counting::idoneal_list(bound)?,
        Which::P4 => counting::p4_exceptional_list(bound)?,
    };
    let joined: Vec<String> = values.iter().map(i64::to_string).collect();
    let human = format!(
        "{} ({} values up to {bound})\nnote: {GRH_NOTE}\n",
        joined.join(","),
        values.len()
    );
    Ok(CommandResult {
        command: "lists",
        parameters: json!({"which": which, "bound": bound}),
        payload: json!({"which": which, "bound": bound, "values": values}),
        notes: vec![GRH_NOTE.to_string()],
        method: Some(Method::Formula),
        human,
        failed: false,
    })
}

fn verify_human(r: &VerifyReport) -> String {
    let mut by_check: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for c in &r.cells {
        let e = by_check.entry(c.check.as_str()).or_default();
        e.1 += 1;
        if c.pass {
            e.0 += 1;
        }
    }
    let mut out = format!("{:<20} {:>8} {:>8}\n", "check", "passed", "cells");
    for (name, (pass, total)) in by_check {
        let _ = writeln!(out, "{name:<20} {pass:>8} {total:>8}");
    }
    for c in r.cells.iter().filter(|c| !c.pass) {
        let _ = writeln!(
            out,
            "FAIL m = {} d = {} {}: formula {} oracle {}",
            c.m, c.d, c.check, c.formula, c.oracle
        );
    }
    let _ = writeln!(
        out,
        "{}",
        if r.all_pass {
            "all checks passed"
        } else {
            "verification failed"
        }
    );
    out
}

fn verify(m_max: i64, d_max: i64) -> nslattice::Result<CommandResult> {
    let r = oracle::verify(m_max, d_max)?;
    Ok(CommandResult {
        command: "verify",
        parameters: json!({"m_max": m_max, "d_max": d_max}),
        payload: serde_json::to_value(&r).expect("serializable"),
        notes: vec![],
        method: Some(Method::Oracle),
        human: verify_human(&r),
        failed: !r.all_pass,
    })
}

fn pr2(d: i64) -> nslattice::Result<CommandResult> {
    let c = counting::picard2_counts(d)?;
    Ok(CommandResult {
        command: "pr2",
        parameters: json!({"d": d}),
        payload: serde_json::to_value(c).expect("serializable"),
        notes: vec![],
        method: Some(Method::Formula),
        human: format!(
            "N = {}, N_sm = {}, N_va = {}\n",
            c.total, c.smooth, c.very_ample
        ),
        failed: false,
    })
}

fn dispatch(command: &Command) -> nslattice::Result<CommandResult> {
    match *command {
        Command::Classgroup { disc } => classgroup(disc),
        Command::Count { m, d, oracle } => count(m, d, oracle),
        Command::Exists { m, d, property } => exists(m, d, property),
        Command::Classify { m, d } => classify(m, d),
        Command::Lists { which, bound } => lists(which, bound),
        Command::Verify { m_max, d_max } => verify(m_max, d_max),
        Command::Pr2 { d } => pr2(d),
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Overflow | Error::Guard(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if !cli.quiet {
        eprintln!("nslattice {}", env!("CARGO_PKG_VERSION"));
    }
    match dispatch(&cli.command) {
        Ok(r) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&r.to_json()).expect("serializable") + "\n"
            } else {
                r.human
            };
            let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), text.as_bytes());
            ExitCode::from(if r.failed { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
