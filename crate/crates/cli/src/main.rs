use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boundquiver::ar::{all_indecomposables, ar_quiver, auslander_presentation, Indecomposables};
use boundquiver::paper::reports_json;
use boundquiver::{
    check_paper, check_string_pair, detect_bands, enumerate_strings, enveloping, find_iso, glue, gluing_algebra,
    is_admissible, parse_presentation, path_basis, tensor, verify_iso, Error, FdAlgebra, GluingSpec, IsoOutcome,
    Presentation, Target, DEFAULT_BUDGET, DEFAULT_CUTOFF, DEFAULT_MAX_DEGREE, DEFAULT_MAX_LENGTH,
};
use clap::{Parser, Subcommand};
use serde_json::json;

/// Bound quiver algebras: strings, Auslander-Reiten quivers, Auslander
/// algebras, tensor and gluing constructions.
#[derive(Parser)]
#[command(name = "bq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Length bound for string and band enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LENGTH)]
    max_length: usize,
    /// Give up on module enumeration past this many indecomposables.
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Degree bound for path bases; reports the basis of constructed algebras.
    #[arg(long, global = true)]
    truncate: Option<usize>,
    /// Write DOT output to this file.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Write the main output to this file.
    #[arg(short, global = true)]
    o: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Admissibility and string-algebra conditions.
    Validate { file: PathBuf },
    /// Canonical strings, one per line.
    Strings { file: PathBuf },
    /// Bands up to rotation and inversion, one per line.
    Bands { file: PathBuf },
    /// Number of indecomposable modules.
    Indec { file: PathBuf },
    /// Auslander-Reiten quiver as DOT.
    Ar { file: PathBuf },
    /// Presentation of the Auslander algebra.
    Auslander { file: PathBuf },
    /// Tensor product of two algebras.
    Tensor { a: PathBuf, b: PathBuf },
    /// Enveloping algebra `A ⊗ A^op`.
    Envelope { file: PathBuf },
    /// Glue vertices, optionally deleting vertices and resurrecting paths
    /// through supplement vertices.
    Glue {
        file: PathBuf,
        /// `v:w` merges `w` into `v`.
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(String, String)>,
        #[arg(long = "delete")]
        deletions: Vec<String>,
        #[arg(long = "supplement")]
        supplement: Vec<String>,
    },
    /// Add relations and delete vertices.
    Quotient {
        file: PathBuf,
        #[arg(long = "relation")]
        relations: Vec<String>,
        #[arg(long = "delete")]
        deletions: Vec<String>,
    },
    /// Search for an isomorphism between two presented algebras.
    Iso { a: PathBuf, b: PathBuf },
    /// Reproduce the worked examples: a_n, d_n, sec5-1, fig5-family.
    CheckPaper {
        target: String,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    s.split_once(':')
        .map(|(v, w)| (v.to_string(), w.to_string()))
        .ok_or_else(|| format!("expected `v:w`, got `{s}`"))
}

enum Failure {
    Usage(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } => Failure::Usage(e.to_string()),
            e => Failure::Module(e),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn load(path: &Path) -> Result<Presentation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| match e {
        Error::Syntax { .. } => Failure::Usage(format!("{}: {e}", path.display())),
        e => Failure::Module(e),
    })
}

fn emit(target: Option<&Path>, text: &str) -> Result<(), Failure> {
    match target {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

impl Cli {
    fn max_degree(&self) -> usize {
        self.truncate.unwrap_or(DEFAULT_MAX_DEGREE)
    }

    /// Writes a constructed presentation, plus its basis report on stderr
    /// when `--truncate` is given.
    fn emit_presentation(&self, p: &Presentation) -> Outcome {
        emit(self.o.as_deref(), &p.to_text())?;
        let Some(d) = self.truncate else {
            return Ok(0);
        };
        let report = path_basis(p, d);
        if self.json {
            eprintln!("{}", serde_json::to_string(&report).expect("report serializes"));
        } else {
            eprintln!("degree dims: {:?}", report.degree_dims());
            match report.dimension {
                Some(n) => eprintln!("dimension: {n}"),
                None => eprintln!("truncated at degree {d}"),
            }
        }
        Ok(if report.truncated { 2 } else { 0 })
    }

    fn run(&self) -> Outcome {
        match &self.command {
            Command::Validate { file } => {
                let p = load(file)?;
                let admissible = is_admissible(&p, self.max_degree());
                let report = check_string_pair(&p);
                let ok = admissible && report.passed;
                let text = if self.json {
                    format!("{}\n", json!({ "admissible": admissible, "string_pair": report }))
                } else {
                    let mut s = format!("admissible: {admissible}\nstring algebra: {}\n", report.passed);
                    if let Some(v) = &report.violation {
                        s += &format!("violation: {}\n", serde_json::to_string(v).expect("serializes"));
                    }
                    s
                };
                emit(self.o.as_deref(), &text)?;
                Ok(if ok { 0 } else { 1 })
            }
            Command::Strings { file } => {
                let p = load(file)?;
                let e = enumerate_strings(&p, self.max_length)?;
                let words: Vec<String> = e.strings.iter().map(|w| w.display(&p.quiver)).collect();
                let text = if self.json {
                    format!(
                        "{}\n",
                        json!({ "count": words.len(), "truncated": e.truncated, "strings": words })
                    )
                } else {
                    words.iter().map(|w| format!("{w}\n")).collect()
                };
                emit(self.o.as_deref(), &text)?;
                Ok(if e.truncated { 2 } else { 0 })
            }
            Command::Bands { file } => {
                let p = load(file)?;
                let bands = detect_bands(&p, self.max_length)?;
                let words: Vec<String> = bands.iter().map(|b| b.word.display(&p.quiver)).collect();
                let text = if self.json {
                    format!(
                        "{}\n",
                        json!({ "count": words.len(), "max_length": self.max_length, "bands": words })
                    )
                } else {
                    words.iter().map(|w| format!("{w}\n")).collect()
                };
                emit(self.o.as_deref(), &text)?;
                Ok(0)
            }
            Command::Indec { file } => {
                let p = load(file)?;
                let fd = FdAlgebra::with_max_degree(&p, self.max_degree())?;
                let (text, code) = match all_indecomposables(&fd, self.cutoff)? {
                    Indecomposables::Complete(m) if self.json => (json!({ "count": m.len() }).to_string(), 0),
                    Indecomposables::Complete(m) => (m.len().to_string(), 0),
                    Indecomposables::RepInfiniteSuspected { explored } if self.json => (
                        json!({ "rep_infinite_suspected": true, "explored": explored }).to_string(),
                        2,
                    ),
                    Indecomposables::RepInfiniteSuspected { explored } => {
                        (format!("RepInfiniteSuspected (explored {explored})"), 2)
                    }
                };
                emit(self.o.as_deref(), &format!("{text}\n"))?;
                Ok(code)
            }
            Command::Ar { file } => {
                let p = load(file)?;
                let fd = FdAlgebra::with_max_degree(&p, self.max_degree())?;
                let Indecomposables::Complete(mods) = all_indecomposables(&fd, self.cutoff)? else {
                    eprintln!(
                        "more than {} indecomposables; representation-infinite suspected",
                        self.cutoff
                    );
                    return Ok(2);
                };
                let ar = ar_quiver(&fd, mods)?;
                let dot = ar.to_dot();
                match (&self.dot, &self.o) {
                    (Some(d), _) => {
                        emit(Some(d), &dot)?;
                        println!("{} modules, {} irreducible maps", ar.len(), ar.num_arrows());
                    }
                    (None, o) => emit(o.as_deref(), &dot)?,
                }
                Ok(0)
            }
            Command::Auslander { file } => {
                let p = load(file)?;
                let fd = FdAlgebra::with_max_degree(&p, self.max_degree())?;
                let Indecomposables::Complete(mods) = all_indecomposables(&fd, self.cutoff)? else {
                    eprintln!(
                        "more than {} indecomposables; representation-infinite suspected",
                        self.cutoff
                    );
                    return Ok(2);
                };
                let ar = ar_quiver(&fd, mods)?;
                if let Some(d) = &self.dot {
                    emit(Some(d), &ar.to_dot())?;
                }
                emit(self.o.as_deref(), &auslander_presentation(&ar)?.to_text())?;
                Ok(0)
            }
            Command::Tensor { a, b } => self.emit_presentation(&tensor(&load(a)?, &load(b)?)),
            Command::Envelope { file } => self.emit_presentation(&enveloping(&load(file)?)),
            Command::Glue {
                file,
                pairs,
                deletions,
                supplement,
            } => {
                let p = load(file)?;
                let out = if deletions.is_empty() && supplement.is_empty() {
                    glue(&p, pairs)?
                } else {
                    let spec = GluingSpec {
                        pairs: pairs.clone(),
                        deletions: deletions.clone(),
                        supplement: supplement.clone(),
                    };
                    gluing_algebra(&p, &spec)?
                };
                self.emit_presentation(&out)
            }
            Command::Quotient {
                file,
                relations,
                deletions,
            } => {
                let p = load(file)?;
                let extra = relations
                    .iter()
                    .map(|r| p.parse_relation(r))
                    .collect::<Result<Vec<_>, _>>()?;
                let q = p.quotient(&extra)?;
                let q = if deletions.is_empty() {
                    q
                } else {
                    q.delete_vertices_by_name(deletions)?
                };
                self.emit_presentation(&q)
            }
            Command::Iso { a, b } => {
                let (pa, pb) = (load(a)?, load(b)?);
                let (text, code) = match find_iso(&pa, &pb, DEFAULT_BUDGET)? {
                    IsoOutcome::Witness(w) => {
                        if !verify_iso(&pa, &pb, &w) {
                            return Err(Failure::Module(Error::InvalidSpec(
                                "witness failed verification".into(),
                            )));
                        }
                        if self.json {
                            (format!("{}\n", w.to_json(&pa, &pb)), 0)
                        } else {
                            (w.to_table(&pa, &pb), 0)
                        }
                    }
                    IsoOutcome::None => ("none\n".to_string(), 1),
                    IsoOutcome::Inconclusive => ("inconclusive\n".to_string(), 2),
                };
                emit(self.o.as_deref(), &text)?;
                Ok(code)
            }
            Command::CheckPaper { target, n } => {
                let t: Target = target.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
                let reports = check_paper(t, *n).map_err(|e| Failure::Usage(e.to_string()))?;
                let text = if self.json {
                    format!("{}\n", reports_json(&reports))
                } else {
                    reports.iter().map(|r| format!("{r}\n")).collect()
                };
                emit(self.o.as_deref(), &text)?;
                Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match cli.run() {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("bq: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Module(e)) => {
            eprintln!("bq: {e}");
            ExitCode::from(1)
        }
    }
}
