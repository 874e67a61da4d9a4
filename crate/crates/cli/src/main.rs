//! `chordw`: weight-system invariants, enumeration, surgery traces, caravan
//! classes, relation checks, and quotient dimensions for (marked) chord
//! diagrams. Emits deterministic JSON lines; `--human` renders tables.

use std::io::BufRead;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use chord_weights::relations::{
    caravan_normal_form, caravan_realization, check_vanishing, span_analysis, RelationKind, Space,
};
use chord_weights::weights::{
    conway, graph_det, graph_nullity, graph_rank, homfly, homfly_deframed, kauffman,
    kauffman_deframed, Functional,
};
use chord_weights::{acceptance, exec, intersection_graph, surgery_trace, MarkedChordDiagram};

#[derive(Parser)]
#[command(
    name = "chordw",
    version,
    about = "Weight systems on (marked) chord diagrams via intersection graphs"
)]
struct Cli {
    /// Render human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    human: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight-system invariants of unmarked diagrams.
    Invariants {
        /// Diagram words such as "1 2 1 2"; read from standard input (one
        /// per line) when absent.
        diagrams: Vec<String>,
    },
    /// List all canonical diagrams of one degree.
    Enumerate {
        /// Degree (number of chords).
        #[arg(short)]
        n: usize,
        /// Include every mark pattern.
        #[arg(long)]
        marked: bool,
    },
    /// Count the boundary circles after surgering every chord.
    Surgery {
        /// Diagram words; standard input when absent. Mark chords with `#`.
        diagrams: Vec<String>,
        /// Also emit each boundary circle's arc itinerary.
        #[arg(long)]
        trace: bool,
    },
    /// Congruence class of the marked adjacency form, with a realizing
    /// diagram.
    Caravan {
        /// Diagram words; standard input when absent.
        diagrams: Vec<String>,
    },
    /// Evaluate weight systems on every relation instance of a family.
    Check {
        /// Relation family: 1t, 4t, 2t, or ext2t.
        #[arg(long)]
        kind: String,
        /// Comma-separated functionals (conway, homfly, kauffman, km, rank,
        /// det, nullity, components, s, t, u, or any with -deframed).
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<String>,
        /// Degree to sweep.
        #[arg(short)]
        n: usize,
    },
    /// Dimension of the degree-n diagram span modulo a space's relations.
    QuotientDim {
        /// Degree to analyze.
        #[arg(short)]
        n: usize,
        /// Diagram space: a (one-term + four-term), b (slides), or bm
        /// (marked slides).
        #[arg(long)]
        space: String,
    },
    /// Run the full acceptance battery.
    Selftest,
}

#[derive(Serialize)]
struct InvariantsRecord {
    diagram: String,
    degree: usize,
    rank: usize,
    det: u8,
    nullity: usize,
    components: usize,
    conway: i64,
    homfly: String,
    homfly_deframed: String,
    kauffman: String,
    kauffman_deframed: String,
}

#[derive(Serialize)]
struct EnumerateRecord {
    degree: usize,
    diagram: String,
}

#[derive(Serialize)]
struct TraceStep {
    arc: usize,
    reversed: bool,
}

#[derive(Serialize)]
struct SurgeryRecord {
    diagram: String,
    degree: usize,
    components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<Vec<TraceStep>>>,
}

#[derive(Serialize)]
struct CaravanRecord {
    diagram: String,
    degree: usize,
    ones: usize,
    zeros: usize,
    hyperbolics: usize,
    realization: String,
}

#[derive(Serialize)]
struct CheckRecord {
    kind: String,
    weight: String,
    degree: usize,
    total: usize,
    failures: usize,
}

#[derive(Serialize)]
struct QuotientRecord {
    space: String,
    degree: usize,
    diagrams: usize,
    relation_instances: usize,
    span_dimension: usize,
    quotient_dimension: usize,
}

#[derive(Serialize)]
struct SelftestRecord {
    criterion: usize,
    name: String,
    checks: usize,
    failures: usize,
    passed: bool,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    if let Some(value) = std::env::var_os("CHORDW_THREADS") {
        let threads = value
            .to_str()
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&t| t > 0);
        match threads {
            Some(t) => {
                exec::configure_threads(t);
            }
            None => {
                eprintln!("error: CHORDW_THREADS must be a positive integer");
                return 1;
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 1;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// The diagrams to operate on: positional words, or standard input with
/// one word per line (blank lines skipped).
fn input_diagrams(words: Vec<String>) -> chord_weights::Result<Vec<MarkedChordDiagram>> {
    let lines: Vec<String> = if words.is_empty() {
        std::io::stdin()
            .lock()
            .lines()
            .map_while(Result::ok)
            .filter(|l| !l.trim().is_empty())
            .collect()
    } else {
        words
    };
    lines.iter().map(|l| MarkedChordDiagram::parse(l)).collect()
}

fn emit<T: Serialize>(record: &T) {
    println!(
        "{}",
        serde_json::to_string(record).expect("records serialize")
    );
}

fn dispatch(cli: Cli) -> chord_weights::Result<i32> {
    let human = cli.human;
    match cli.command {
        Command::Invariants { diagrams } => {
            for d in input_diagrams(diagrams)? {
                let record = invariants_record(&d)?;
                if human {
                    print_invariants_table(&record);
                } else {
                    emit(&record);
                }
            }
            Ok(0)
        }
        Command::Enumerate { n, marked } => {
            if n > 6 {
                return Err(chord_weights::Error::DegreeCap {
                    requested: n,
                    cap: 6,
                    context: "enumeration",
                });
            }
            let diagrams = if marked {
                MarkedChordDiagram::enumerate_marked(n)
            } else {
                MarkedChordDiagram::enumerate(n)
            };
            for d in diagrams {
                if human {
                    println!("{d}");
                } else {
                    emit(&EnumerateRecord {
                        degree: n,
                        diagram: d.to_string(),
                    });
                }
            }
            Ok(0)
        }
        Command::Surgery { diagrams, trace } => {
            for d in input_diagrams(diagrams)? {
                let walked = surgery_trace(&d);
                let record = SurgeryRecord {
                    diagram: d.to_string(),
                    degree: d.degree(),
                    components: walked.components(),
                    trace: trace.then(|| {
                        walked
                            .cycles()
                            .iter()
                            .map(|cycle| {
                                cycle
                                    .iter()
                                    .map(|step| TraceStep {
                                        arc: step.arc,
                                        reversed: step.reversed,
                                    })
                                    .collect()
                            })
                            .collect()
                    }),
                };
                if human {
                    println!(
                        "{}  ->  {} boundary circle(s)",
                        record.diagram, record.components
                    );
                    if let Some(cycles) = &record.trace {
                        for (i, cycle) in cycles.iter().enumerate() {
                            let steps: Vec<String> = cycle
                                .iter()
                                .map(|s| {
                                    if s.reversed {
                                        format!("{}'", s.arc)
                                    } else {
                                        s.arc.to_string()
                                    }
                                })
                                .collect();
                            println!("  circle {}: {}", i, steps.join(" "));
                        }
                    }
                } else {
                    emit(&record);
                }
            }
            Ok(0)
        }
        Command::Caravan { diagrams } => {
            for d in input_diagrams(diagrams)? {
                let class = caravan_normal_form(&d);
                let record = CaravanRecord {
                    diagram: d.to_string(),
                    degree: d.degree(),
                    ones: class.ones,
                    zeros: class.zeros,
                    hyperbolics: class.hyperbolics,
                    realization: caravan_realization(&class).to_string(),
                };
                if human {
                    println!(
                        "{}  ->  ones={} zeros={} hyperbolics={}  realization: {}",
                        record.diagram,
                        record.ones,
                        record.zeros,
                        record.hyperbolics,
                        record.realization
                    );
                } else {
                    emit(&record);
                }
            }
            Ok(0)
        }
        Command::Check { kind, weights, n } => {
            let kind = RelationKind::parse(&kind)?;
            let functionals: Vec<Functional> = weights
                .iter()
                .map(|w| Functional::parse(w))
                .collect::<chord_weights::Result<_>>()?;
            let mut any_failed = false;
            if human {
                println!("kind  weight             degree  total  failures");
            }
            for f in functionals {
                let report = check_vanishing(f, n, kind)?;
                any_failed |= !report.passed();
                let record = CheckRecord {
                    kind: kind.to_string(),
                    weight: f.to_string(),
                    degree: n,
                    total: report.total,
                    failures: report.failures.len(),
                };
                if human {
                    println!(
                        "{:<5} {:<18} {:>6} {:>6} {:>9}",
                        record.kind, record.weight, record.degree, record.total, record.failures
                    );
                } else {
                    emit(&record);
                }
            }
            Ok(if any_failed { 2 } else { 0 })
        }
        Command::QuotientDim { n, space } => {
            let space = Space::parse(&space)?;
            let analysis = span_analysis(n, space)?;
            let record = QuotientRecord {
                space: space.to_string(),
                degree: n,
                diagrams: analysis.basis_size,
                relation_instances: analysis.relation_instances,
                span_dimension: analysis.span_dimension,
                quotient_dimension: analysis.quotient_dimension,
            };
            if human {
                println!("space               {}", record.space);
                println!("degree              {}", record.degree);
                println!("diagrams            {}", record.diagrams);
                println!("relation instances  {}", record.relation_instances);
                println!("span dimension      {}", record.span_dimension);
                println!("quotient dimension  {}", record.quotient_dimension);
            } else {
                emit(&record);
            }
            Ok(0)
        }
        Command::Selftest => {
            let outcomes = acceptance::run_all();
            let mut any_failed = false;
            for outcome in &outcomes {
                any_failed |= !outcome.passed();
                if human {
                    println!("{}", outcome.line());
                } else {
                    emit(&SelftestRecord {
                        criterion: outcome.number,
                        name: outcome.name.to_string(),
                        checks: outcome.checks,
                        failures: outcome.failure_count,
                        passed: outcome.passed(),
                    });
                }
            }
            Ok(if any_failed { 2 } else { 0 })
        }
    }
}

fn invariants_record(d: &MarkedChordDiagram) -> chord_weights::Result<InvariantsRecord> {
    let graph = intersection_graph(d);
    Ok(InvariantsRecord {
        diagram: d.to_string(),
        degree: d.degree(),
        rank: graph_rank(&graph),
        det: graph_det(&graph),
        nullity: graph_nullity(&graph),
        components: chord_weights::boundary_components(d),
        conway: conway(d)?,
        homfly: homfly(d)?.to_string(),
        homfly_deframed: homfly_deframed(d)?.to_string(),
        kauffman: kauffman(d)?.to_string(),
        kauffman_deframed: kauffman_deframed(d)?.to_string(),
    })
}

fn print_invariants_table(record: &InvariantsRecord) {
    println!("diagram            {}", record.diagram);
    println!("degree             {}", record.degree);
    println!("rank               {}", record.rank);
    println!("det                {}", record.det);
    println!("nullity            {}", record.nullity);
    println!("components         {}", record.components);
    println!("conway             {}", record.conway);
    println!("homfly             {}", record.homfly);
    println!("homfly deframed    {}", record.homfly_deframed);
    println!("kauffman           {}", record.kauffman);
    println!("kauffman deframed  {}", record.kauffman_deframed);
    println!();
}
