//! `tspace` — validate structure files, classify actions, build quotients,
//! run dynamics checks, and execute the law registry.
//!
//! Exit codes: 0 = all checks passed/verified; 1 = violation or refutation
//! (report emitted); 2 = usage or parse error.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tspace_core::dsl::{self, Bundle};
use tspace_core::dynamics::{self, Endomap, SearchBounds, SearchGoal};
use tspace_core::laws::{self, CorpusBounds, LawStatus};
use tspace_core::quotient;
use tspace_core::sets::{render, Mask};
use tspace_core::{GenAction, SpaceMap};

#[derive(Parser)]
#[command(name = "tspace", version, about = "finite models of generalized group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and validate every declared structure.
    Validate { file: PathBuf },
    /// Classify an action: effective/transitive/free/regular/perfect and
    /// the singular set.
    Classify {
        file: PathBuf,
        #[arg(long)]
        action: String,
    },
    /// Orbits, stabilizers and regularity per point.
    Orbits {
        file: PathBuf,
        #[arg(long)]
        action: String,
    },
    /// Build the quotient space X/T and profile the projection map.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        action: String,
        /// Write the quotient as a DSL space block to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Transitivity checks for a self-map of the action's space.
    Dynamics {
        file: PathBuf,
        #[arg(long)]
        action: String,
        #[arg(long)]
        map: String,
        #[arg(long, value_parser = ["transitive", "t-transitive", "dense-orbit"])]
        check: String,
    },
    /// Equivariance and pseudoequivariance of a map between two actions of
    /// the same group.
    Equivariance {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        map: String,
    },
    /// Topological T-conjugacy of two self-maps via a conjugating map.
    Conjugacy {
        file: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Run the law registry (all laws, or one with --law).
    Laws {
        #[arg(long)]
        law: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_group_order: usize,
        #[arg(long, default_value_t = 3)]
        max_space_size: usize,
        /// Include relaxed (non-Hausdorff) instances in the corpus.
        #[arg(long)]
        relaxed: bool,
        /// Write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search for a counterexample witness.
    Search {
        #[arg(long)]
        goal: String,
        #[command(flatten)]
        bounds: SearchBoundsArgs,
    },
    /// Parse a file and print its canonical form.
    Fmt { file: PathBuf },
}

#[derive(Args)]
struct SearchBoundsArgs {
    #[arg(long, default_value_t = 2)]
    max_group_order: usize,
    #[arg(long, default_value_t = 3)]
    max_space_size: usize,
    #[arg(long, default_value_t = 8)]
    max_topologies: usize,
    #[arg(long)]
    perfect_only: bool,
}

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

fn load(file: &PathBuf) -> Result<(dsl::Document, Bundle), u8> {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", file.display());
            return Err(EXIT_USAGE);
        }
    };
    match dsl::parse_document(&text) {
        Ok(doc) => {
            let bundle = dsl::elaborate(&doc);
            Ok((doc, bundle))
        }
        Err(diags) => {
            for d in diags {
                eprintln!("{}: {d}", file.display());
            }
            Err(EXIT_USAGE)
        }
    }
}

fn get_action<'b>(bundle: &'b Bundle, name: &str) -> Result<&'b GenAction, u8> {
    if let Some(a) = bundle.actions.get(name) {
        return Ok(a);
    }
    if let Some(issue) = bundle.issues.iter().find(|i| i.kind == "action" && i.name == name) {
        eprintln!("{issue}");
        return Err(EXIT_VIOLATION);
    }
    eprintln!("no action named `{name}` in the file");
    Err(EXIT_USAGE)
}

fn get_map<'b>(bundle: &'b Bundle, name: &str) -> Result<&'b SpaceMap, u8> {
    match bundle.maps.get(name) {
        Some(m) => Ok(m),
        None => {
            eprintln!("no map named `{name}` in the file");
            Err(EXIT_USAGE)
        }
    }
}

fn set_names(mask: Mask, names: &[String]) -> String {
    render(mask, names)
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Validate { file } => {
            let (_, bundle) = match load(&file) {
                Ok(v) => v,
                Err(code) => return code,
            };
            for (name, t) in &bundle.groups {
                let r = t.report();
                println!(
                    "group {name}: order {}, well-formed={} (hausdorff={} m1={} m2={} e={} eq1={} eq2={})",
                    t.order(),
                    t.well_formed(),
                    r.hausdorff,
                    r.m1_continuous,
                    r.m2_continuous,
                    r.e_continuous,
                    r.eq1_holds,
                    r.eq2_holds
                );
            }
            for (name, x) in &bundle.spaces {
                println!(
                    "space {name}: {} points, hausdorff={}, discrete={}",
                    x.size(),
                    x.is_hausdorff(),
                    x.is_discrete()
                );
            }
            for (name, a) in &bundle.actions {
                println!(
                    "action {name}: valid, strict={}, perfect={}",
                    a.space().is_hausdorff(),
                    a.is_perfect()
                );
            }
            for (name, m) in &bundle.maps {
                println!("map {name}: total, continuous={}", m.is_continuous());
            }
            if bundle.issues.is_empty() {
                println!("ok");
                EXIT_OK
            } else {
                for issue in &bundle.issues {
                    println!("violation: {issue}");
                }
                EXIT_VIOLATION
            }
        }
        Command::Classify { file, action } => {
            let (_, bundle) = match load(&file) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let a = match get_action(&bundle, &action) {
                Ok(a) => a,
                Err(code) => return code,
            };
            let p = tspace_core::action::classify_action(a);
            println!("effective: {}", p.effective);
            println!("transitive: {}", p.transitive);
            println!("free: {}", p.free);
            println!("regular: {}", p.regular);
            println!("perfect: {}", p.perfect);
            println!("singular set: {}", set_names(p.singular_set, a.space().point_names()));
            EXIT_OK
        }
        Command::Orbits { file, action } => {
            let (_, bundle) = match load(&file) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let a = match get_action(&bundle, &action) {
                Ok(a) => a,
                Err(code) => return code,
            };
            for x in 0..a.space().size() {
                let d = tspace_core::action::orbit_data(a, x).expect("in range");
                println!(
                    "{}: orbit {} stabilizer {} {}",
                    a.space().name(x),
                    set_names(d.orbit, a.space().point_names()),
                    set_names(d.stabilizer, a.group().algebra().names()),
                    if d.regular_point { "regular" } else { "singular" }
                );
            }
            EXIT_OK
        }
        Command::Quotient { file, action, emit } => {
            let (_, bundle) = match load(&file) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let a = match get_action(&bundle, &action) {
                Ok(a) => a,
                Err(code) => return code,
            };
            let q = quotient::build_quotient(a);
            let audit = q.partition.audit;
            println!(
                "orbit relation: reflexive={} symmetric={} transitive={} closure_taken={}",
                audit.reflexive, audit.symmetric, audit.transitive, audit.closure_taken
            );
            for (i, class) in q.partition.classes.iter().enumerate() {
                println!(
                    "class {}: {}",
                    q.space.name(i),
                    set_names(*class, a.space().point_names())
                );
            }
            let p = quotient::projection_profile(&q);
            println!(
                "projection: open={} closed={} proper={}{} quotient_hausdorff={}",
                p.open_map,
                p.closed_map,
                p.proper_literal.holds,
                if p.proper_literal.degenerate { " (degenerate)" } else { "" },
                p.quotient_hausdorff
            );
            if let Some(out) = emit {
                let doc = dsl::Document { items: vec![dsl::space_item("Q", &q.space)] };
                if let Err(e) = std::fs::write(&out, dsl::serialize_document(&doc)) {
                    eprintln!("cannot write {}: {e}", out.display());
                    return EXIT_USAGE;
                }
                println!("wrote quotient space to {}", out.display());
            }
            EXIT_OK
        }
        Command::Dynamics { file, action, map, check } => {
            let (_, bundle) = match load(&file) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let a = match get_action(&bundle, &action) {
                Ok(a) => a,
                Err(code) => return code,
            };
            let m = match get_map(&bundle, &map) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let f = match Endomap::new(m.clone()) {
                Ok(f) => f,
                Err(e) => {
                    println!("violation: map `{map}`: {e}");
                    return EXIT_VIOLATION;
                }
            };
            if f.space() != a.space() {
                eprintln!("map `{map}` is not a self-map of the action's space");
                return EXIT_USAGE;
            }
            match check.as_str() {
                "transitive" => {
                    let v = dynamics::is_transitive(&f);
                    report_transitivity("transitive", &v, a);
                    if v.result {
                        EXIT_OK
                    } else {
                        EXIT_VIOLATION
                    }
                }
                "t-transitive" => {
                    let v = dynamics::is_t_transitive(&f, a).expect("same space");
                    report_transitivity("T-transitive", &v, a);
                    if v.result {
                        EXIT_OK
                    } else {
                        EXIT_VIOLATION
                    }
                }
                "dense-orbit" => match dynamics::dense_t_orbit(&f, a).expect("same space") {
                    Some(x) => {
                        println!("dense T-orbit witness: {}", a.space().name(x));
                        EXIT_OK
                    }
                    None => {
                        println!("no point has a dense T-orbit");
                        EXIT_VIOLATION
                    }
                },
                _ => unreachable!("clap validates"),
            }
        }
        Command::Equivariance { file, from, to, map } => {
            let (_, bundle) = match load(&file) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let a = match get_action(&bundle, &from) {
                Ok(a) => a,
                Err(code) => return code,
            };
            let b = match get_action(&bundle, &to) {
                Ok(b) => b,
                Err(code) => return code,
            };
            let m = match get_map(&bundle, &map) {
                Ok(m) => m,
                Err(code) => return code,
            };
            match dynamics::equivariance_profile(m, a, b) {
                Ok(p) => {
                    println!("equivariant: {}", p.equivariant);
                    println!("pseudoequivariant: {}", p.pseudoequivariant);
                    println!("stabilizer_inclusion: {}", p.stabilizer_inclusion);
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("{e}");
                    EXIT_USAGE
                }
            }
        }
        Command::Conjugacy { file, f, g, h, from, to } => {
            let (_, bundle) = match load(&file) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let a = match get_action(&bundle, &from) {
                Ok(a) => a,
                Err(code) => return code,
            };
            let b = match get_action(&bundle, &to) {
                Ok(b) => b,
                Err(code) => return code,
            };
            let fm = match get_map(&bundle, &f) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let gm = match get_map(&bundle, &g) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let hm = match get_map(&bundle, &h) {
                Ok(m) => m,
                Err(code) => return code,
            };
            let (fe, ge) = match (Endomap::new(fm.clone()), Endomap::new(gm.clone())) {
                (Ok(fe), Ok(ge)) => (fe, ge),
                _ => {
                    println!("violation: f and g must be continuous self-maps");
                    return EXIT_VIOLATION;
                }
            };
            match dynamics::check_t_conjugacy(&fe, &ge, hm, a, b) {
                Ok(v) => {
                    println!(
                        "conjugate: {} (homeomorphism={} pseudoequivariant={} intertwines={})",
                        v.conjugate, v.homeomorphism, v.pseudoequivariant, v.intertwines
                    );
                    if v.conjugate {
                        EXIT_OK
                    } else {
                        EXIT_VIOLATION
                    }
                }
                Err(e) => {
                    eprintln!("{e}");
                    EXIT_USAGE
                }
            }
        }
        Command::Laws { law, max_group_order, max_space_size, relaxed, json } => {
            let bounds = CorpusBounds {
                max_group_order,
                max_space_size,
                relaxed,
                ..CorpusBounds::default()
            };
            let reports = match law {
                Some(id) => match laws::run_law(&id, &bounds) {
                    Ok(r) => vec![r],
                    Err(e) => {
                        eprintln!("{e}");
                        return EXIT_USAGE;
                    }
                },
                None => laws::run_all(&bounds),
            };
            for r in &reports {
                let extra = match r.status {
                    LawStatus::OutOfScope => {
                        format!(" — {}", r.note.as_deref().unwrap_or(""))
                    }
                    _ => format!(
                        " ({} checked, {} substantive, {} degenerate{})",
                        r.instances_checked,
                        r.nondegenerate_passes,
                        r.degenerate_passes,
                        if r.informative.is_empty() {
                            String::new()
                        } else {
                            format!(", {} informative", r.informative.len())
                        }
                    ),
                };
                println!("{}: {}{extra} — {}", r.id, r.status.name(), r.title);
                for note in &r.informative {
                    println!("  informative: {note}");
                }
                if let Some(w) = &r.witness {
                    println!("  witness:");
                    for line in w.document.lines() {
                        println!("    {line}");
                    }
                }
            }
            if let Some(path) = json {
                let payload = json_reports(&reports);
                if let Err(e) = std::fs::write(&path, payload) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            if reports.iter().any(|r| r.status == LawStatus::Refuted) {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Command::Search { goal, bounds } => {
            let Some(goal) = SearchGoal::parse(&goal) else {
                eprintln!(
                    "unknown goal `{goal}`; one of: t-transitive-not-transitive, pseudo-not-equivariant, orbit-relation-not-symmetric, eq1-fails-for-rees, dense-orbit-and-t-transitive"
                );
                return EXIT_USAGE;
            };
            let b = SearchBounds {
                max_group_order: bounds.max_group_order,
                max_space_size: bounds.max_space_size,
                max_topologies: bounds.max_topologies,
                perfect_only: bounds.perfect_only,
            };
            let outcome = dynamics::search_witness(goal, &b);
            match outcome.witness {
                Some(w) => {
                    println!(
                        "witness found ({}), after {} candidates: {}",
                        w.label, outcome.instances_scanned, w.detail
                    );
                    let doc = dsl::action_document(&w.action, w.map.as_ref());
                    print!("{}", dsl::serialize_document(&doc));
                    EXIT_OK
                }
                None => {
                    println!(
                        "exhausted {} candidates within bounds; no witness",
                        outcome.instances_scanned
                    );
                    EXIT_VIOLATION
                }
            }
        }
        Command::Fmt { file } => {
            let (doc, _) = match load(&file) {
                Ok(v) => v,
                Err(code) => return code,
            };
            print!("{}", dsl::serialize_document(&doc));
            EXIT_OK
        }
    }
}

fn report_transitivity(kind: &str, v: &dynamics::TransitivityVerdict, a: &GenAction) {
    if v.result {
        println!("{kind}: true ({} basis pairs witnessed)", v.witnesses.len());
        for w in &v.witnesses {
            let t = w
                .t
                .map(|t| format!(", t = {}", a.group().algebra().names()[t]))
                .unwrap_or_default();
            println!(
                "  U = {} V = {}: n = {}{t}",
                set_names(w.u, a.space().point_names()),
                set_names(w.v, a.space().point_names()),
                w.n
            );
        }
    } else {
        let r = v.refutation.expect("false verdicts carry a refutation");
        println!(
            "{kind}: false — U = {} never reaches V = {} (cycle after {} images)",
            set_names(r.u, a.space().point_names()),
            set_names(r.v, a.space().point_names()),
            r.exhausted_bound
        );
    }
}

/// The fixed JSON schema: `{schema_version: 1, reports: [{id, status,
/// instances_checked, witness?}]}`.
fn json_reports(reports: &[laws::LawReport]) -> String {
    #[derive(serde::Serialize)]
    struct JsonReport<'a> {
        id: &'a str,
        status: &'a str,
        instances_checked: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<&'a str>,
    }
    #[derive(serde::Serialize)]
    struct JsonDoc<'a> {
        schema_version: u32,
        reports: Vec<JsonReport<'a>>,
    }
    let doc = JsonDoc {
        schema_version: 1,
        reports: reports
            .iter()
            .map(|r| JsonReport {
                id: &r.id,
                status: r.status.name(),
                instances_checked: r.instances_checked,
                witness: r.witness.as_ref().map(|w| w.document.as_str()),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
    out.push('\n');
    out
}
