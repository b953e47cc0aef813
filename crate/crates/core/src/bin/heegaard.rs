use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use heegaard::chains::{boundary_on_family, corner_boundary, Domain, Polygon};
use heegaard::fixtures::{fixture, FIXTURES};
use heegaard::gen_domains::{enumerate_generators, enumerate_positive_domains, solve_domains, Bounds, SolveError};
use heegaard::io::{emit, parse, parse_domain, parse_pair, parse_polygon, ParseError, SpecError};
use heegaard::maslov::{mu_iota, mu_with_form, Form, MaslovError};
use heegaard::measures::{euler_measure, point_measure, point_measure_at};
use heegaard::nice::{index_zero_triangle_domains, NiceError};
use heegaard::HeegaardDiagram;

/// Domains, Maslov indices and triangle counts on Heegaard diagrams.
#[derive(Parser)]
#[command(name = "heegaard", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every diagram invariant.
    Validate { file: String },
    /// List the generators joining two families.
    Generators {
        file: String,
        /// Families `i,j`, 1-based.
        #[arg(long)]
        pair: String,
    },
    /// Solve for the domains joining a polygon of generators.
    Domains {
        file: String,
        /// Generators such as `x1+x2,y1+y2,z1+z2`.
        #[arg(long)]
        gens: String,
        /// Also list positive basepoint-free domains with coefficients up to this.
        #[arg(long)]
        positive: Option<i64>,
    },
    /// Euler measure, boundary corners and point measures of a 2-chain.
    Measure {
        file: String,
        /// Region coefficients such as `T1:1,H:-2`.
        #[arg(long)]
        domain: String,
        #[arg(long)]
        gens: Option<String>,
    },
    /// Maslov index and fat-diagonal intersection number of a domain.
    Maslov {
        file: String,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        domain: String,
        #[arg(long, value_enum, default_value_t = FormArg::Default)]
        form: FormArg,
    },
    /// Index-zero triangle domains on a nice diagram.
    CountTriangles {
        file: String,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        max_coeff: i64,
    },
    /// Bundled fixtures.
    Fixtures {
        #[command(subcommand)]
        action: Option<FixtureAction>,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    /// Print a fixture as a diagram file.
    Emit { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Default,
    Symmetric,
    Lipshitz,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure { code, message: message.to_string() }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        fail(1, e)
    }
}

impl From<MaslovError> for Failure {
    fn from(e: MaslovError) -> Self {
        fail(2, e)
    }
}

impl From<NiceError> for Failure {
    fn from(e: NiceError) -> Self {
        fail(2, e)
    }
}

/// A file path, or else the name of a bundled fixture.
fn load(file: &str) -> Result<HeegaardDiagram, Failure> {
    let text = match std::fs::read_to_string(file) {
        Ok(text) => text,
        Err(err) => match fixture(file) {
            Some(f) => emit(&f.data()),
            None => return Err(fail(1, format!("{file}: {err}, and no fixture has that name"))),
        },
    };
    parse(&text).map_err(|e| match e {
        ParseError::Syntax { .. } => fail(1, format!("{file}: {e}")),
        ParseError::Invalid(_) => fail(2, format!("{file}: invalid diagram\n{e}")),
    })
}

fn solve<'a>(d: &'a HeegaardDiagram, p: &Polygon) -> Result<heegaard::gen_domains::DomainSolution<'a>, Failure> {
    solve_domains(d, p).map_err(|e| match e {
        SolveError::Infeasible => fail(3, e),
        SolveError::Chain(c) => fail(2, c),
    })
}

fn run(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Validate { file } => {
            let d = load(&file)?;
            writeln!(
                out,
                "valid: genus {}, {} families of {} curves, {} vertices, {} arcs, {} regions",
                d.genus(),
                d.family_count(),
                d.curves_per_family(),
                d.vertices().len(),
                d.arcs().len(),
                d.regions().len()
            )
            .unwrap();
        }
        Command::Generators { file, pair } => {
            let d = load(&file)?;
            let (i, j) = parse_pair(&pair)?;
            if i >= d.family_count() || j >= d.family_count() || i == j {
                return Err(fail(1, format!("no family pair {pair} in a diagram with {} families", d.family_count())));
            }
            let gens = enumerate_generators(&d, (i, j));
            if gens.is_empty() {
                return Err(fail(3, "no generators"));
            }
            for g in gens {
                writeln!(out, "{}", g.label(&d)).unwrap();
            }
        }
        Command::Domains { file, gens, positive } => {
            let d = load(&file)?;
            let p = parse_polygon(&d, &gens)?;
            let sol = solve(&d, &p)?;
            writeln!(out, "particular: {}", sol.particular).unwrap();
            writeln!(out, "periodic basis ({}):", sol.lattice_basis.len()).unwrap();
            for b in &sol.lattice_basis {
                writeln!(out, "  {b}").unwrap();
            }
            if let Some(max_coeff) = positive {
                let bounds = Bounds { max_coeff, avoid: d.basepoint_regions(), require_nonzero: false };
                let found = enumerate_positive_domains(&sol, &bounds);
                writeln!(out, "positive ({}):", found.len()).unwrap();
                for f in &found {
                    writeln!(out, "  {f}").unwrap();
                }
            }
        }
        Command::Measure { file, domain, gens } => {
            let d = load(&file)?;
            let dom = parse_domain(&d, &domain)?;
            measure(&mut out, &dom);
            if let Some(gens) = gens {
                let p = parse_polygon(&d, &gens)?;
                for g in p.gens() {
                    writeln!(out, "mu {} = {}", g.label(&d), point_measure(&dom, g)).unwrap();
                }
            }
        }
        Command::Maslov { file, gens, domain, form } => {
            let d = load(&file)?;
            let p = parse_polygon(&d, &gens)?;
            let dom = parse_domain(&d, &domain)?;
            match form {
                FormArg::Default => {
                    let (mu, iota) = mu_iota(&dom, &p)?;
                    writeln!(out, "mu = {mu}, iota = {iota}").unwrap();
                }
                FormArg::Symmetric => writeln!(out, "mu = {}", mu_with_form(&dom, &p, Form::Symmetric)?).unwrap(),
                FormArg::Lipshitz => writeln!(out, "mu = {}", mu_with_form(&dom, &p, Form::Lipshitz)?).unwrap(),
            }
        }
        Command::CountTriangles { file, gens, max_coeff } => {
            let d = load(&file)?;
            let p = parse_polygon(&d, &gens)?;
            let found = index_zero_triangle_domains(&d, &p, max_coeff)?;
            for f in &found {
                writeln!(out, "{f}").unwrap();
            }
            writeln!(out, "count = {}", found.len()).unwrap();
        }
        Command::Fixtures { action } => match action {
            None | Some(FixtureAction::List) => {
                for f in FIXTURES {
                    writeln!(out, "{}\t{}", f.name, f.summary).unwrap();
                }
            }
            Some(FixtureAction::Emit { name }) => {
                let f = fixture(&name).ok_or_else(|| fail(1, format!("unknown fixture `{name}`")))?;
                out.push_str(&emit(&f.data()));
            }
        },
    }
    Ok(out)
}

/// Everything printed here is independent of stored curve orientations.
fn measure(out: &mut String, dom: &Domain<'_>) {
    let d = dom.diagram();
    writeln!(out, "e = {}", euler_measure(dom)).unwrap();
    for f in 0..d.family_count() {
        let chain = boundary_on_family(dom, f);
        let weight: i64 = chain.terms().map(|(_, m)| m.abs()).sum();
        let corners: Vec<String> = corner_boundary(d, &chain)
            .terms()
            .filter(|&(_, c)| c != 0)
            .map(|(v, c)| format!("{}:{}", d.vertex(v).name, c))
            .collect();
        let corners = if corners.is_empty() { "0".to_string() } else { corners.join(",") };
        writeln!(out, "family {}: arc weight {weight}, corners {corners}", f + 1).unwrap();
    }
    for v in d.vertex_ids() {
        writeln!(out, "mu {} = {}", d.vertex(v).name, point_measure_at(dom, v)).unwrap();
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
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
