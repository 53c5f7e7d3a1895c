use std::path::PathBuf;
use std::process::ExitCode;

use anyonic_entropy::entropy::{ace_entropy, ace_entropy_family, aee_bipartite, entropy_report, EntropyOrder, EntropyReport};
use anyonic_entropy::fermionic::{fermionic_catalog, fermionic_stopo, make_super};
use anyonic_entropy::io::{self as aio, export_csv, export_json, LoadedState};
use anyonic_entropy::model::{catalog_names, genus_dim, genus_dim_by_fusion, product, table1_names, validate, AnyonModel, ChargeId};
use anyonic_entropy::state::PairVariant;
use anyonic_entropy::tee::{self, BoundaryComponent, BoundarySpec, Convention, FitGeometry, Geometry, Method, TeeResult};
use anyonic_entropy::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod output;

use output::{scale, Cell, Format, Output, Table};

#[derive(Parser)]
#[command(name = "anyon-tee", version, about = "Anyonic entanglement entropy and topological entanglement entropy")]
struct Cli {
    /// Report entropies in bits instead of nats.
    #[arg(long, global = true)]
    bits: bool,
    /// Write the result to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Tolerance for consistency checks.
    #[arg(long, global = true, env = "ANYON_TEE_TOL", default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog and model files.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Entropies of states.
    #[command(subcommand)]
    Entropy(EntropyCmd),
    /// Topological entanglement entropy of boundary regions.
    #[command(subcommand)]
    Tee(TeeCmd),
    /// Fermionic models.
    #[command(subcommand)]
    Fermion(FermionCmd),
    /// Ground-state degeneracies on closed surfaces.
    #[command(subcommand)]
    Genus(GenusCmd),
    /// Fixed-point string-net entropies.
    #[command(subcommand)]
    Stringnet(StringnetCmd),
}

#[derive(Subcommand)]
enum ModelCmd {
    /// List catalog models.
    List {
        #[arg(long)]
        max_d2: Option<f64>,
    },
    /// Charges, dimensions, twists and fusion rules.
    Show { model: String },
    /// Check the fusion and modular axioms.
    Validate { model: String },
    /// Deligne product of two models.
    Product { first: String, second: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Product,
    Correlated,
    Pure,
}

#[derive(Subcommand)]
enum EntropyCmd {
    /// Entropy report of a state file.
    State {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        alpha: Vec<f64>,
    },
    /// Charge-entanglement entropy of the two-anyon family.
    Ace {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value = "pure")]
        variant: VariantArg,
        /// Charge probabilities in catalog order; defaults to `d_a^2 / D^2`.
        #[arg(long, value_delimiter = ',')]
        probs: Option<Vec<f64>>,
    },
}

#[derive(Args, Clone)]
struct TeeOpts {
    #[arg(long)]
    model: String,
    /// Renyi order; 1 is von Neumann.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Mirror-doubled surface instead of the physical region.
    #[arg(long)]
    doubled: bool,
    #[arg(long, value_enum, default_value = "closed")]
    method: MethodArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Transfer,
    Brute,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Transfer => Method::Transfer,
            MethodArg::Brute => Method::Brute,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryArg {
    Disk,
    Annulus,
    Torus,
    Sphere3,
}

#[derive(Subcommand)]
enum TeeCmd {
    Disk {
        #[command(flatten)]
        opts: TeeOpts,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0")]
        charge: String,
    },
    Annulus {
        #[command(flatten)]
        opts: TeeOpts,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "0")]
        charge: String,
    },
    Torus {
        #[command(flatten)]
        opts: TeeOpts,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "0")]
        charge: String,
    },
    Sphere3 {
        #[command(flatten)]
        opts: TeeOpts,
        /// Segment counts `l,m,n`.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        segments: Vec<usize>,
        /// Boundary charges `x,y,z`.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        charges: Vec<String>,
    },
    /// Arbitrary boundary components with charge distributions.
    General {
        #[arg(long)]
        model: String,
        #[arg(long)]
        doubled: bool,
        /// `n@charge` or `n:p0,p1,...`; repeat per boundary component.
        #[arg(long = "boundary", required = true)]
        boundaries: Vec<String>,
        /// Entropy of the interior charge configuration.
        #[arg(long, default_value_t = 0.0)]
        interior: f64,
    },
    /// Grid over segment counts and Renyi orders.
    Sweep {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value = "disk")]
        geometry: GeometryArg,
        /// `a..b` inclusive or a comma list.
        #[arg(long)]
        n: String,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        alpha: Vec<f64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, default_value = "0")]
        charge: String,
        /// Sphere charges `x,y,z`.
        #[arg(long, value_delimiter = ',')]
        charges: Option<Vec<String>>,
        #[arg(long)]
        doubled: bool,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
    },
    /// Least-squares line through entropy versus segment count.
    Fit {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum, default_value = "disk")]
        geometry: GeometryArg,
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value = "0")]
        charge: String,
        #[arg(long)]
        doubled: bool,
    },
    /// Kitaev-Preskill combination.
    Kp {
        #[arg(long)]
        model: String,
        #[arg(long)]
        alpha: Option<f64>,
    },
}

#[derive(Subcommand)]
enum FermionCmd {
    /// Build a fermionic model and optionally save it.
    Make {
        #[arg(long)]
        model: String,
        #[arg(long)]
        fermion: String,
        /// Where to save the fermionic model file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Fermionic topological entanglement entropy.
    Tee {
        #[arg(long, required_unless_present = "file")]
        model: Option<String>,
        #[arg(long, required_unless_present = "file")]
        fermion: Option<String>,
        #[arg(long, conflicts_with_all = ["model", "fermion"])]
        file: Option<PathBuf>,
    },
    Catalog,
}

#[derive(Subcommand)]
enum GenusCmd {
    /// Degeneracy on a genus-g surface with the given punctures.
    Dim {
        #[arg(long)]
        model: String,
        #[arg(long)]
        g: u32,
        #[arg(long, value_delimiter = ',')]
        charges: Vec<String>,
    },
}

#[derive(Subcommand)]
enum StringnetCmd {
    Entropy {
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
    },
    Check {
        #[arg(long)]
        model: String,
    },
}

fn load(spec: &str) -> Result<AnyonModel> {
    aio::model_from_name_or_path(spec)
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("bad range `{s}`; use `a..b` or `a,b,c`"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn convention(doubled: bool) -> Convention {
    if doubled {
        Convention::Doubled
    } else {
        Convention::Undoubled
    }
}

fn three<T: Clone>(v: &[T], what: &str) -> Result<[T; 3]> {
    match v {
        [a, b, c] => Ok([a.clone(), b.clone(), c.clone()]),
        _ => Err(Error::InvalidArgument(format!("{what} needs exactly three values"))),
    }
}

fn parse_boundary(m: &AnyonModel, s: &str) -> Result<BoundaryComponent> {
    let bad = || Error::InvalidArgument(format!("bad boundary `{s}`; use `n@charge` or `n:p0,p1,...`"));
    if let Some((n, c)) = s.split_once('@') {
        let c = m.charge(c.trim())?;
        let mut dist = vec![0.0; m.rank()];
        dist[c.0] = 1.0;
        return Ok(BoundaryComponent {
            segments: n.trim().parse().map_err(|_| bad())?,
            charge_dist: dist,
        });
    }
    let (n, p) = s.split_once(':').ok_or_else(bad)?;
    let dist = p
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryComponent {
        segments: n.trim().parse().map_err(|_| bad())?,
        charge_dist: dist,
    })
}

fn report_table(r: &EntropyReport) -> Table {
    let mut t = Table::new(&["quantity", "value"]);
    t.push(vec![Cell::Text("von_neumann".into()), Cell::Entropy(r.von_neumann)]);
    for v in &r.renyi {
        t.push(vec![Cell::Text(format!("renyi_{}", v.alpha)), Cell::Entropy(v.value)]);
    }
    t.push(vec![Cell::Text("shannon".into()), Cell::Entropy(r.shannon_part)]);
    t.push(vec![Cell::Text("charge".into()), Cell::Entropy(r.charge_part)]);
    t
}

fn tee_rows(rows: &[TeeResult], out: &Output) -> Result<()> {
    let scaled: Vec<TeeResult> = rows
        .iter()
        .map(|r| TeeResult {
            entropy: scale(r.entropy, out.bits),
            linear_term: scale(r.linear_term, out.bits),
            topo_term: scale(r.topo_term, out.bits),
            charge_term: scale(r.charge_term, out.bits),
            f: scale(r.f, out.bits),
            ..r.clone()
        })
        .collect();
    match out.format {
        Format::Csv => {
            let mut buf = Vec::new();
            export_csv(&scaled, &mut buf)?;
            out.write_text(&String::from_utf8(buf).expect("csv output is utf-8"))
        }
        Format::Json => out.write_text(&export_json(&scaled)?),
        Format::Table => {
            let mut t = Table::new(&["n", "m", "l", "charges", "alpha", "entropy", "linear_term", "topo_term", "charge_term", "F"]);
            let opt = |x: Option<usize>| Cell::Text(x.map(|v| v.to_string()).unwrap_or_default());
            for r in rows {
                t.push(vec![
                    Cell::Int(r.n as i64),
                    opt(r.m),
                    opt(r.l),
                    Cell::Text(r.charges.clone()),
                    Cell::Real(r.alpha),
                    Cell::Entropy(r.entropy),
                    Cell::Entropy(r.linear_term),
                    Cell::Entropy(r.topo_term),
                    Cell::Entropy(r.charge_term),
                    Cell::Entropy(r.f),
                ]);
            }
            out.emit(&t)
        }
    }
}

fn single_tee(model: &AnyonModel, geometry: Geometry, n: usize, opts: &TeeOpts, out: &Output) -> Result<()> {
    let rows = tee::sweep(model, geometry, &[n], &[opts.alpha], convention(opts.doubled), opts.method.into())?;
    tee_rows(&rows, out)
}

fn run_model(cmd: ModelCmd, out: &Output, tol: f64) -> Result<()> {
    match cmd {
        ModelCmd::List { max_d2 } => {
            let table1 = table1_names();
            let mut t = Table::new(&["model", "charges", "D2", "modular", "table1"]);
            for name in catalog_names() {
                let m = load(&name)?;
                if max_d2.is_some_and(|x| m.total_qdim_sq() > x + 1e-12) {
                    continue;
                }
                t.push(vec![
                    Cell::Text(name.clone()),
                    Cell::Int(m.rank() as i64),
                    Cell::Real(m.total_qdim_sq()),
                    Cell::Flag(m.is_modular()),
                    Cell::Flag(table1.contains(&name)),
                ]);
            }
            out.emit(&t)
        }
        ModelCmd::Show { model } => {
            let m = load(&model)?;
            let mut t = Table::new(&["charge", "label", "dual", "qdim", "twist_turns"]);
            for c in m.charges() {
                t.push(vec![
                    Cell::Int(c.0 as i64),
                    Cell::Text(m.label(c).to_string()),
                    Cell::Text(m.label(m.dual(c)).to_string()),
                    Cell::Real(m.qdim(c)),
                    Cell::Text(m.twist_turns(c).to_string()),
                ]);
            }
            out.emit(&t)?;
            if out.format == Format::Table && out.out.is_none() {
                println!("\nD^2 = {:.12}, modular = {}", m.total_qdim_sq(), m.is_modular());
                for a in m.charges() {
                    for b in m.charges().filter(|b| b.0 >= a.0) {
                        let parts: Vec<String> = m
                            .fuse(a, b)
                            .map(|(c, n)| if n == 1 { m.label(c).to_string() } else { format!("{n}*{}", m.label(c)) })
                            .collect();
                        println!("{} x {} = {}", m.label(a), m.label(b), parts.join(" + "));
                    }
                }
            }
            Ok(())
        }
        ModelCmd::Validate { model } => {
            let m = load(&model)?;
            let report = validate(&m, tol);
            let required = |name: &str| m.is_modular() || !is_modular_check(name);
            let mut t = Table::new(&["check", "required", "passed", "residual"]);
            for c in &report.checks {
                t.push(vec![
                    Cell::Text(c.name.to_string()),
                    Cell::Flag(required(c.name)),
                    Cell::Flag(c.passed),
                    Cell::Real(c.residual),
                ]);
            }
            out.emit(&t)?;
            let failed = report.checks.iter().find(|c| !c.passed && required(c.name));
            match failed {
                Some(c) => Err(Error::ModelCheck {
                    check: c.name.to_string(),
                    residual: c.residual,
                }),
                None => Ok(()),
            }
        }
        ModelCmd::Product { first, second } => {
            let m = product(&load(&first)?, &load(&second)?);
            out.write_text(&aio::model_json(&m)?)
        }
    }
}

fn is_modular_check(name: &str) -> bool {
    matches!(name, "s_unitary" | "s_symmetric" | "s_dimensions" | "balancing" | "verlinde")
}

fn run_entropy(cmd: EntropyCmd, out: &Output) -> Result<()> {
    match cmd {
        EntropyCmd::State { file, alpha } => match aio::load_state(&file)? {
            LoadedState::Mixed(s) => out.emit(&report_table(&entropy_report(&s, &alpha)?)),
            LoadedState::Pure(psi) => {
                let mut t = report_table(&aee_bipartite(&psi, &alpha)?);
                t.push(vec![Cell::Text("ace".into()), Cell::Entropy(ace_entropy(&psi))]);
                out.emit(&t)
            }
        },
        EntropyCmd::Ace { model, variant, probs } => {
            let m = load(&model)?;
            let probs = probs.unwrap_or_else(|| m.qdims().iter().map(|d| d * d / m.total_qdim_sq()).collect());
            let variant = match variant {
                VariantArg::Product => PairVariant::Product,
                VariantArg::Correlated => PairVariant::Correlated,
                VariantArg::Pure => PairVariant::Pure,
            };
            let v = ace_entropy_family(&m, variant, &probs)?;
            out.emit(&Table::pairs(vec![
                ("ace", Cell::Entropy(v)),
                ("bound_2logD", Cell::Entropy(m.total_qdim_sq().ln())),
            ]))
        }
    }
}

fn run_tee(cmd: TeeCmd, out: &Output) -> Result<()> {
    match cmd {
        TeeCmd::Disk { opts, n, charge } => {
            let m = load(&opts.model)?;
            let g = Geometry::Disk { charge: m.charge(&charge)? };
            single_tee(&m, g, n, &opts, out)
        }
        TeeCmd::Annulus { opts, n, m: mm, charge } => {
            let m = load(&opts.model)?;
            let g = Geometry::Annulus { m: mm, charge: m.charge(&charge)? };
            single_tee(&m, g, n, &opts, out)
        }
        TeeCmd::Torus { opts, n, m: mm, charge } => {
            let m = load(&opts.model)?;
            let g = Geometry::Torus { m: mm, charge: m.charge(&charge)? };
            single_tee(&m, g, n, &opts, out)
        }
        TeeCmd::Sphere3 { opts, segments, charges } => {
            let m = load(&opts.model)?;
            let [l, mm, n] = three(&segments, "--segments")?;
            let labels = three(&charges, "--charges")?;
            let charges = [m.charge(&labels[0])?, m.charge(&labels[1])?, m.charge(&labels[2])?];
            single_tee(&m, Geometry::Sphere3 { l, m: mm, charges }, n, &opts, out)
        }
        TeeCmd::General { model, doubled, boundaries, interior } => {
            let m = load(&model)?;
            let components = boundaries.iter().map(|b| parse_boundary(&m, b)).collect::<Result<Vec<_>>>()?;
            let spec = BoundarySpec {
                components,
                convention: convention(doubled),
            };
            let v = tee::general_entropy(&m, &spec, interior)?;
            out.emit(&Table::pairs(vec![("entropy", Cell::Entropy(v))]))
        }
        TeeCmd::Sweep { model, geometry, n, alpha, m: mm, l, charge, charges, doubled, method } => {
            let m = load(&model)?;
            let ns = parse_range(&n)?;
            let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Error::InvalidArgument(format!("this geometry needs {flag}")));
            let g = match geometry {
                GeometryArg::Disk => Geometry::Disk { charge: m.charge(&charge)? },
                GeometryArg::Annulus => Geometry::Annulus { m: need(mm, "--m")?, charge: m.charge(&charge)? },
                GeometryArg::Torus => Geometry::Torus { m: need(mm, "--m")?, charge: m.charge(&charge)? },
                GeometryArg::Sphere3 => {
                    let labels = three(&charges.unwrap_or_default(), "--charges")?;
                    Geometry::Sphere3 {
                        l: need(l, "--l")?,
                        m: need(mm, "--m")?,
                        charges: [m.charge(&labels[0])?, m.charge(&labels[1])?, m.charge(&labels[2])?],
                    }
                }
            };
            let rows = tee::sweep(&m, g, &ns, &alpha, convention(doubled), method.into())?;
            tee_rows(&rows, out)
        }
        TeeCmd::Fit { model, geometry, n, alpha, charge, doubled } => {
            let m = load(&model)?;
            let c = m.charge(&charge)?;
            let g = match geometry {
                GeometryArg::Disk => FitGeometry::Disk { charge: c },
                GeometryArg::Annulus | GeometryArg::Torus => FitGeometry::Annulus { charge: c },
                GeometryArg::Sphere3 => return Err(Error::InvalidArgument("fits support disk and annulus".into())),
            };
            let f = tee::fit_stopo(&m, g, &parse_range(&n)?, EntropyOrder::from_alpha(alpha)?, convention(doubled))?;
            out.emit(&Table::pairs(vec![
                ("slope", Cell::Entropy(f.slope)),
                ("intercept", Cell::Entropy(f.intercept)),
                ("residual_max", Cell::Entropy(f.residual_max)),
                ("stopo", Cell::Entropy(tee::stopo(&m))),
            ]))
        }
        TeeCmd::Kp { model, alpha } => {
            let m = load(&model)?;
            let kp = tee::kitaev_preskill(&m, alpha)?;
            let mut items = vec![("S_topo", Cell::Entropy(kp.stopo)), ("kp_von_neumann", Cell::Entropy(kp.vn_combo))];
            if let (Some(a), Some(c), Some(r)) = (kp.alpha, kp.renyi_combo, kp.renyi_residual) {
                items.push(("alpha", Cell::Real(a)));
                items.push(("kp_renyi", Cell::Entropy(c)));
                items.push(("kp_renyi_residual", Cell::Entropy(r)));
            }
            out.emit(&Table::pairs(items))
        }
    }
}

fn run_fermion(cmd: FermionCmd, out: &Output) -> Result<()> {
    match cmd {
        FermionCmd::Make { model, fermion, save } => {
            let m = load(&model)?;
            let sm = make_super(&m, m.charge(&fermion)?)?;
            if let Some(p) = save {
                aio::save_super(&sm, &p)?;
            }
            let mut t = Table::new(&["supersector", "qdim"]);
            for &(a, b) in sm.supersectors() {
                t.push(vec![Cell::Text(format!("{{{}, {}}}", m.label(a), m.label(b))), Cell::Real(m.qdim(a))]);
            }
            out.emit(&t)
        }
        FermionCmd::Tee { model, fermion, file } => {
            let sm = match file {
                Some(p) => aio::load_super(&p)?,
                None => {
                    let m = load(model.as_deref().unwrap_or_default())?;
                    let psi: ChargeId = m.charge(fermion.as_deref().unwrap_or_default())?;
                    make_super(&m, psi)?
                }
            };
            out.emit(&Table::pairs(vec![
                ("Dhat2", Cell::Real(sm.dhat_sq())),
                ("S_topo_fermionic", Cell::Entropy(fermionic_stopo(&sm))),
            ]))
        }
        FermionCmd::Catalog => {
            let mut t = Table::new(&["model", "fermion", "supersectors", "Dhat2", "Dhat2_table", "S_topo_fermionic"]);
            for e in fermionic_catalog()? {
                let sm = &e.model;
                t.push(vec![
                    Cell::Text(e.name.clone()),
                    Cell::Text(sm.base().label(sm.fermion()).to_string()),
                    Cell::Int(sm.supersectors().len() as i64),
                    Cell::Real(sm.dhat_sq()),
                    Cell::Real(e.dhat_sq_expected),
                    Cell::Entropy(fermionic_stopo(sm)),
                ]);
            }
            out.emit(&t)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let out = Output {
        format: cli.format,
        out: cli.out,
        bits: cli.bits,
    };
    match cli.command {
        Command::Model(c) => run_model(c, &out, cli.tol),
        Command::Entropy(c) => run_entropy(c, &out),
        Command::Tee(c) => run_tee(c, &out),
        Command::Fermion(c) => run_fermion(c, &out),
        Command::Genus(GenusCmd::Dim { model, g, charges }) => {
            let m = load(&model)?;
            let ids = charges.iter().filter(|c| !c.is_empty()).map(|c| m.charge(c)).collect::<Result<Vec<_>>>()?;
            let mut items = vec![("by_fusion", Cell::Int(genus_dim_by_fusion(&m, g, &ids) as i64))];
            if m.is_modular() {
                items.push(("by_smatrix", Cell::Real(genus_dim(&m, g, &ids)?)));
            }
            out.emit(&Table::pairs(items))
        }
        Command::Stringnet(StringnetCmd::Entropy { model, n }) => {
            let m = load(&model)?;
            out.emit(&Table::pairs(vec![("entropy", Cell::Entropy(tee::stringnet_entropy(&m, n)))]))
        }
        Command::Stringnet(StringnetCmd::Check { model }) => {
            let m = load(&model)?;
            let c = tee::stringnet_check(&m);
            out.emit(&Table::pairs(vec![
                ("boundary_residual", Cell::Real(c.boundary_residual)),
                ("tee_residual", Cell::Real(c.tee_residual)),
                ("passed", Cell::Flag(c.passed)),
            ]))?;
            if c.passed {
                Ok(())
            } else {
                Err(Error::ModelCheck {
                    check: "stringnet".into(),
                    residual: c.boundary_residual.max(c.tee_residual),
                })
            }
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_validation() {
        3
    } else if e.is_numerical() {
        4
    } else if matches!(e, Error::Io(_)) {
        1
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
