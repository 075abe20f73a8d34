//! `entangle-lab`: construct, analyze and classify multipartite states.
//!
//! Sites, vertices and permutation images are 1-based on the command line;
//! state files keep the library's 0-based indices.

mod report;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use entangle_core::algebra::{bush_oa, oa_from_generator, FiniteRing, GeneratorMatrix, OrthogonalArray};
use entangle_core::dynamics::{
    hamiltonian_2exc, hamiltonian_3body, simulate_circuit, spectrum_report, synthesize_circuit, GateList,
};
use entangle_core::hypergraph::{self, family, Hypergraph};
use entangle_core::measures::{
    concurrence_matrix, entanglement_ratio, is_k_uniform, k_uniformity_tol, resistance, two_site_concurrence,
};
use entangle_core::multiunitary::{
    flattening_errors, golden_constants, is_perfect, verify_orthogonality_relations, FourIndexTensor,
};
use entangle_core::slocc::{
    lm_equivalence, normal_form_transform, slip_roots, slocc_discriminate, ExtendedComplex, SlipMeasure,
};
use entangle_core::states::{self, excitation_state, state_from_oa};
use entangle_core::symmetry::{
    canonical_h_symmetric, dicke_like, subgroup_generate, symmetry_group_tol, PermGroup, Permutation,
};
use entangle_core::PureState;
use report::{print_text, Input, Outcome, Report};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const DEFAULT_TOL: f64 = 1e-9;
/// Largest party count for which `state analyze` runs the resistance scan.
const RESISTANCE_MAX_SITES: usize = 10;

#[derive(Parser)]
#[command(name = "entangle-lab", version, about = "Multipartite entanglement toolbox")]
struct Cli {
    /// Print the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// Numerical tolerance for the verification steps
    #[arg(long, global = true, default_value_t = DEFAULT_TOL, allow_negative_numbers = true)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and inspect state files
    #[command(subcommand)]
    State(StateCmd),
    /// Orthogonal arrays
    #[command(subcommand)]
    Oa(OaCmd),
    /// Excitation states of hypergraphs
    #[command(subcommand)]
    Graph(GraphCmd),
    /// SLOCC and LM equivalence
    #[command(subcommand)]
    Slocc(SloccCmd),
    /// Four-index tensors and 2-unitarity
    #[command(subcommand)]
    Tensor(TensorCmd),
    /// Excitation-preserving Hamiltonians
    #[command(subcommand)]
    Ham(HamCmd),
    /// State-preparation circuits
    #[command(subcommand)]
    Circuit(CircuitCmd),
    /// Permutation symmetry
    #[command(subcommand)]
    Symmetry(SymmetryCmd),
}

#[derive(Subcommand)]
enum StateCmd {
    /// Write a named state: ghz:N,d w:N dicke:N,k psi:N,m m4 chi3 ame4:d ame5min:d
    /// ame5:d ame6:phi gabcd:a,b,c,d majorana:t1,p1,... excitation:<graph> oa:<file>
    Make {
        family: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Uniformity, resistance, pairwise concurrences and entanglement ratios
    Analyze {
        file: PathBuf,
        /// Exit with status 2 unless the state is at least this uniform
        #[arg(long)]
        expect_uniformity: Option<usize>,
    },
}

#[derive(Subcommand)]
enum OaCmd {
    /// Expand a generator matrix (rows separated by `;`) or a Bush array
    Expand {
        #[arg(long, conflicts_with = "bush")]
        generator: Option<String>,
        /// Ring: Zd, GFq, GFq:c0,c1,..., Zd1+Zd2
        #[arg(long, default_value = "Z3")]
        ring: String,
        /// Bush array `d,k`
        #[arg(long)]
        bush: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Strength, index and irredundancy of an array file
    Check {
        file: PathBuf,
        /// Exit with status 2 unless the strength reaches this value
        #[arg(long)]
        strength: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Measured pairwise concurrences against the closed forms
    Concurrence {
        /// Hypergraph file or family spec such as cycle:7
        graph: String,
    },
    /// Find a bipartition across which the excitation state factorizes
    Factorize { graph: String },
}

#[derive(Args)]
struct MeasureArgs {
    /// concurrence or tau3
    #[arg(long, default_value = "tau3")]
    measure: String,
}

#[derive(Subcommand)]
enum SloccCmd {
    /// Roots of the SLIP polynomial after splitting one site
    Roots {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        site: usize,
        #[command(flatten)]
        measure: MeasureArgs,
    },
    /// Search a determinant-one local operator relating two states
    Discriminate {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        measure: MeasureArgs,
    },
    /// Moebius map carrying four roots onto a normal system
    NormalForm {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        site: usize,
        #[command(flatten)]
        measure: MeasureArgs,
    },
    /// Search a local monomial operator relating two states
    Lm { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum TensorCmd {
    /// Check the three flattenings of a CSV tensor for unitarity
    #[command(name = "verify-2unitary")]
    Verify2Unitary {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        d: usize,
    },
    /// Golden constants and the orthogonality relations of the AME(4,6) blocks
    Golden,
}

#[derive(Subcommand)]
enum HamCmd {
    /// Top eigenpair of the two-excitation and three-body Hamiltonians
    Check { graph: String },
}

#[derive(Subcommand)]
enum CircuitCmd {
    /// Preparation circuit for the excitation state of a connected graph
    Synth {
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a gate list to |0...0> or to a given state
    Sim {
        gates: PathBuf,
        #[arg(long)]
        init: Option<PathBuf>,
        /// Compare the output with the excitation state of this graph
        #[arg(long)]
        graph: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SymmetryCmd {
    /// Symmetry group of a state file, or the group generated by permutations
    Group {
        #[arg(required_unless_present = "generators")]
        file: Option<PathBuf>,
        /// Accept symmetries up to a global phase
        #[arg(long)]
        projective: bool,
        /// One-line generator such as "2 3 1" (repeatable)
        #[arg(long = "gen", conflicts_with = "file")]
        generators: Vec<String>,
        /// Also write the Dicke-like state with this many excitations
        #[arg(long, requires = "generators")]
        dicke: Option<usize>,
        /// Also write the canonical H-symmetric state
        #[arg(long, requires = "generators")]
        canonical: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap reports usage errors with 2, which is reserved for failed verification
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(threads) = std::env::var("ENTANGLE_LAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // an already initialised pool is not an error worth stopping for
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    let start = Instant::now();
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(outcome) => {
            let report = Report {
                command: name,
                inputs: outcome.inputs,
                results: outcome.results,
                tolerances: outcome.tolerances,
                status: if outcome.verified { "ok" } else { "verification_failed" },
                runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print_text(&report);
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn command_name(c: &Command) -> String {
    let (group, sub) = match c {
        Command::State(s) => ("state", if matches!(s, StateCmd::Make { .. }) { "make" } else { "analyze" }),
        Command::Oa(s) => ("oa", if matches!(s, OaCmd::Expand { .. }) { "expand" } else { "check" }),
        Command::Graph(s) => ("graph", if matches!(s, GraphCmd::Concurrence { .. }) { "concurrence" } else { "factorize" }),
        Command::Slocc(s) => (
            "slocc",
            match s {
                SloccCmd::Roots { .. } => "roots",
                SloccCmd::Discriminate { .. } => "discriminate",
                SloccCmd::NormalForm { .. } => "normal-form",
                SloccCmd::Lm { .. } => "lm",
            },
        ),
        Command::Tensor(s) => ("tensor", if matches!(s, TensorCmd::Golden) { "golden" } else { "verify-2unitary" }),
        Command::Ham(_) => ("ham", "check"),
        Command::Circuit(s) => ("circuit", if matches!(s, CircuitCmd::Synth { .. }) { "synth" } else { "sim" }),
        Command::Symmetry(_) => ("symmetry", "group"),
    };
    format!("{group} {sub}")
}

fn run(cli: &Cli) -> Result<Outcome> {
    let tol = cli.tol;
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("--tol must be a positive number");
    }
    let mut out = Outcome::new();
    match &cli.command {
        Command::State(StateCmd::Make { family, output }) => {
            let psi = make_state(family, &mut out)?;
            out.set("family", family);
            out.set("dims", psi.dims());
            out.set("support", psi.support_size());
            emit_state(&psi, output.as_deref(), &mut out)?;
        }
        Command::State(StateCmd::Analyze { file, expect_uniformity }) => {
            let psi = read_state(file, &mut out)?;
            analyze_state(&psi, tol, *expect_uniformity, &mut out)?;
        }
        Command::Oa(OaCmd::Expand { generator, ring, bush, output }) => {
            let oa = match (generator, bush) {
                (Some(g), None) => {
                    let ring = FiniteRing::parse(ring)?;
                    out.set("ring", format!("{:?}", ring.kind()));
                    oa_from_generator(&GeneratorMatrix::new(ring, parse_matrix(g)?)?)?
                }
                (None, Some(b)) => {
                    let v = parse_list(b)?;
                    let [d, k] = v[..] else { bail!("--bush takes d,k") };
                    bush_oa(d, k)?
                }
                _ => bail!("give exactly one of --generator or --bush"),
            };
            out.set("rows", oa.n_rows());
            out.set("columns", oa.n_cols());
            out.set("alphabet", oa.alphabet());
            out.set("strength", oa.strength());
            match output {
                Some(p) => {
                    std::fs::write(p, oa.to_text()).with_context(|| format!("writing {}", p.display()))?;
                    out.set("written", p.display().to_string());
                }
                None if !cli.json => print!("{}", oa.to_text()),
                None => out.set("array", oa.rows()),
            }
        }
        Command::Oa(OaCmd::Check { file, strength }) => {
            let (input, text) = Input::read(file)?;
            out.inputs.push(input);
            let oa = OrthogonalArray::from_text(&text)?;
            oa_report(&oa, *strength, &mut out)?;
        }
        Command::Graph(GraphCmd::Concurrence { graph }) => {
            let g = read_graph(graph, &mut out)?;
            graph_concurrence(&g, tol, &mut out)?;
        }
        Command::Graph(GraphCmd::Factorize { graph }) => {
            let g = read_graph(graph, &mut out)?;
            match hypergraph::factorize(&g) {
                Some((a, b)) => {
                    out.set("product", true);
                    out.set("part_1", one_based(&a));
                    out.set("part_2", one_based(&b));
                }
                None => out.set("product", false),
            }
        }
        Command::Slocc(cmd) => slocc(cmd, tol, &mut out)?,
        Command::Tensor(TensorCmd::Verify2Unitary { file, d }) => {
            let (input, text) = Input::read(file)?;
            out.inputs.push(input);
            let t = FourIndexTensor::from_csv(&text, *d)?;
            out.tol("unitarity", tol);
            let errs: Vec<_> = flattening_errors(&t).into_iter().map(|(p, e)| json!({"pairing": p.label(), "error": e})).collect();
            let perfect = is_perfect(&t, tol)?;
            out.set("flattenings", errs);
            out.set("two_unitary", perfect);
            out.set("nonzero_entries", t.nonzero_count());
            out.require(perfect);
        }
        Command::Tensor(TensorCmd::Golden) => {
            let g = golden_constants();
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            out.tol("relations", tol);
            out.set("a", g.a);
            out.set("b", g.b);
            out.set("c", g.c);
            let ident = [(g.a * g.a + g.b * g.b - 0.5).abs(), (g.c * g.c - 0.5).abs(), (g.b / g.a - phi).abs()];
            out.set("constant_identities_max_error", ident.iter().cloned().fold(0.0, f64::max));
            out.require(ident.iter().all(|&e| e < tol));
            let rels: Vec<_> = verify_orthogonality_relations()
                .iter()
                .map(|r| json!({"relation": r.label, "abs": r.value.norm(), "holds": r.value.norm() < tol}))
                .collect();
            let all = rels.iter().all(|r| r["holds"] == json!(true));
            out.set("relations", rels);
            out.set("all_relations_hold", all);
            out.require(all);
        }
        Command::Ham(HamCmd::Check { graph }) => {
            let g = read_graph(graph, &mut out)?;
            ham_check(&g, tol, &mut out)?;
        }
        Command::Circuit(CircuitCmd::Synth { graph, output }) => {
            let g = read_graph(graph, &mut out)?;
            let gates = synthesize_circuit(&g)?;
            let counts = ["U1", "U2", "U3", "U4"].map(|l| gates.gates.iter().filter(|x| x.label.to_string() == l).count());
            out.set("qubits", gates.n_qubits);
            out.set("gates", gates.len());
            out.set("gate_counts", json!({"U1": counts[0], "U2": counts[1], "U3": counts[2], "U4": counts[3]}));
            let text = gates.to_json()?;
            match output {
                Some(p) => {
                    std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
                    out.set("written", p.display().to_string());
                }
                None if !cli.json => println!("{text}"),
                None => out.set("gate_list", serde_json::from_str::<serde_json::Value>(&text)?),
            }
        }
        Command::Circuit(CircuitCmd::Sim { gates, init, graph, output }) => {
            let (input, text) = Input::read(gates)?;
            out.inputs.push(input);
            let gl = GateList::from_json(&text)?;
            let start = match init {
                Some(p) => read_state(p, &mut out)?,
                None => PureState::basis(&vec![2; gl.n_qubits], &vec![0; gl.n_qubits])?,
            };
            let result = simulate_circuit(&gl, &start)?;
            out.tol("norm", tol);
            let norm_err = (result.norm() - start.norm()).abs();
            out.set("norm_error", norm_err);
            out.require(norm_err < tol.max(1e-10));
            if let Some(g) = graph {
                let g = read_graph(g, &mut out)?;
                let f = result.fidelity(&excitation_state(&g)?);
                out.set("fidelity", f);
                out.tol("fidelity", tol);
                out.require(f >= 1.0 - tol);
            }
            emit_state(&result, output.as_deref(), &mut out)?;
        }
        Command::Symmetry(SymmetryCmd::Group { file, projective, generators, dicke, canonical, output }) => {
            let group = match file {
                Some(f) => {
                    let psi = read_state(f, &mut out)?;
                    out.set("projective", projective);
                    out.tol("stabilizer", tol);
                    symmetry_group_tol(&psi, *projective, tol)?
                }
                None => {
                    let gens: Vec<Permutation> = generators.iter().map(|g| Permutation::parse(g)).collect::<Result<_, _>>()?;
                    let n = gens[0].len();
                    subgroup_generate(n, &gens)?
                }
            };
            group_report(&group, &mut out);
            let built = match (dicke, canonical) {
                (Some(_), true) => bail!("choose one of --dicke and --canonical"),
                (Some(k), false) => Some(dicke_like(group.n(), *k, &group)?),
                (None, true) => Some(canonical_h_symmetric(&group)?),
                (None, false) => None,
            };
            if let Some(psi) = built {
                emit_state(&psi, output.as_deref(), &mut out)?;
            }
        }
    }
    Ok(out)
}

fn make_state(spec: &str, out: &mut Outcome) -> Result<PureState> {
    if let Some(g) = spec.strip_prefix("excitation:") {
        let g = read_graph(g, out)?;
        return Ok(excitation_state(&g)?);
    }
    if let Some(path) = spec.strip_prefix("oa:") {
        let (input, text) = Input::read(Path::new(path))?;
        out.inputs.push(input);
        return Ok(state_from_oa(&OrthogonalArray::from_text(&text)?, None)?);
    }
    Ok(states::by_name(spec)?)
}

fn emit_state(psi: &PureState, output: Option<&Path>, out: &mut Outcome) -> Result<()> {
    let text = psi.to_json()?;
    match output {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            out.set("written", p.display().to_string());
        }
        None => out.set("state", serde_json::from_str::<serde_json::Value>(&text)?),
    }
    Ok(())
}

fn read_state(path: &Path, out: &mut Outcome) -> Result<PureState> {
    let (input, text) = Input::read(path)?;
    out.inputs.push(input);
    PureState::from_json(&text).with_context(|| format!("reading state {}", path.display()))
}

/// A hypergraph file if the path exists, otherwise a family spec.
fn read_graph(arg: &str, out: &mut Outcome) -> Result<Hypergraph> {
    let path = Path::new(arg);
    if path.is_file() {
        let (input, text) = Input::read(path)?;
        out.inputs.push(input);
        return Ok(Hypergraph::from_text(&text)?);
    }
    family::parse(arg).map_err(|e| anyhow!("`{arg}` is neither a hypergraph file nor a family spec: {e}"))
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split([',', ' ']).filter(|t| !t.is_empty()).map(|t| t.parse::<usize>().map_err(|_| anyhow!("bad integer `{t}`"))).collect()
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';').map(|row| parse_list(row.trim())).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn site_index(site: usize, n: usize) -> Result<usize> {
    if site == 0 || site > n {
        bail!("--site must lie in 1..={n}");
    }
    Ok(site - 1)
}

fn analyze_state(psi: &PureState, tol: f64, expect: Option<usize>, out: &mut Outcome) -> Result<()> {
    let psi = psi.clone().normalize()?;
    let n = psi.n_sites();
    out.tol("uniformity", tol);
    out.set("sites", n);
    out.set("dims", psi.dims());
    out.set("support", psi.support_size());
    let k = k_uniformity_tol(&psi, tol)?;
    out.set("uniformity", k);
    out.set("is_ame", n >= 2 && k == n / 2);
    if let Some(e) = expect {
        out.require(k >= e && is_k_uniform(&psi, e, tol)?);
    }
    if n <= RESISTANCE_MAX_SITES && psi.dims().iter().all(|&d| d <= 3) {
        let rep = resistance(&psi)?;
        out.set("entangled", rep.entangled);
        out.set("resistance", rep.m);
        let sizes: serde_json::Map<String, serde_json::Value> = rep
            .per_size
            .iter()
            .map(|(t, v)| (t.to_string(), json!({"verdict": v.verdict, "method": v.method})))
            .collect();
        out.set("resistance_by_traced_parties", sizes);
    }
    if psi.is_qubits() && n >= 2 {
        out.set("concurrence_matrix", round_rows(concurrence_matrix(&psi)?));
        let ratios: Vec<Option<f64>> = (0..n).map(|v| entanglement_ratio(&psi, v).ok()).collect();
        out.set("entanglement_ratio", ratios);
    }
    Ok(())
}

fn round_rows(m: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    m.into_iter().map(|r| r.into_iter().map(|x| (x * 1e12).round() / 1e12).collect()).collect()
}

fn oa_report(oa: &OrthogonalArray, expect: Option<usize>, out: &mut Outcome) -> Result<()> {
    let k = oa.strength();
    out.set("rows", oa.n_rows());
    out.set("columns", oa.n_cols());
    out.set("alphabet", oa.alphabet());
    out.set("strength", k);
    if k >= 1 {
        out.set("index", oa.index(k)?);
        out.set("irredundant", oa.irredundant(k)?);
    }
    if let Some(e) = expect {
        out.require(k >= e);
    }
    out.require(k >= 1);
    Ok(())
}

fn graph_concurrence(g: &Hypergraph, tol: f64, out: &mut Outcome) -> Result<()> {
    let psi = excitation_state(g)?;
    let n = g.n_vertices();
    out.tol("closed_form", tol);
    out.set("vertices", n);
    out.set("edges", g.n_edges());
    let mut pairs = Vec::new();
    let mut worst: f64 = 0.0;
    for v in 0..n {
        for w in v + 1..n {
            let c = two_site_concurrence(&psi, v, w)?;
            let p = hypergraph::predicted_concurrence(g, v, w)?;
            worst = worst.max((c - p).abs());
            if c > tol || p > tol {
                pairs.push(json!({"pair": [v + 1, w + 1], "concurrence": c, "closed_form": p}));
            }
        }
    }
    let mut ratios = Vec::new();
    for v in 0..n {
        if let (Ok(r), Ok(p)) = (entanglement_ratio(&psi, v), hypergraph::predicted_ratio(g, v)) {
            worst = worst.max((r - p).abs());
            ratios.push(json!({"vertex": v + 1, "ratio": r, "closed_form": p}));
        }
    }
    out.set("nonzero_pairs", pairs);
    out.set("entanglement_ratio", ratios);
    out.set("max_deviation", worst);
    out.require(worst < tol);
    Ok(())
}

fn measure(args: &MeasureArgs) -> Result<SlipMeasure> {
    Ok(args.measure.parse::<SlipMeasure>()?)
}

fn roots_text(roots: &[ExtendedComplex]) -> Vec<String> {
    roots.iter().map(|r| r.to_string()).collect()
}

fn slocc(cmd: &SloccCmd, tol: f64, out: &mut Outcome) -> Result<()> {
    match cmd {
        SloccCmd::Roots { file, site, measure: m } => {
            let psi = read_state(file, out)?;
            let s = site_index(*site, psi.n_sites())?;
            let rs = slip_roots(&psi, s, measure(m)?)?;
            out.set("site", site);
            out.set("measure", rs.measure);
            out.set("degree", rs.h);
            out.set("roots", roots_text(&rs.roots));
            out.set("distinct_roots", rs.n_distinct(1e-6));
        }
        SloccCmd::Discriminate { a, b, measure: m } => {
            let pa = read_state(a, out)?;
            let pb = read_state(b, out)?;
            out.tol("proportionality", entangle_core::slocc::discriminate::PROPORTIONALITY_TOL);
            match slocc_discriminate(&pa, &pb, measure(m)?)? {
                Some(w) => {
                    out.set("equivalent", true);
                    out.set("operators", w.op.ops.iter().map(matrix_json).collect::<Vec<_>>());
                    out.set("scalar", [w.scalar.re, w.scalar.im]);
                }
                None => {
                    out.set("equivalent", false);
                    out.require(false);
                }
            }
        }
        SloccCmd::NormalForm { file, site, measure: m } => {
            let psi = read_state(file, out)?;
            let s = site_index(*site, psi.n_sites())?;
            let rs = slip_roots(&psi, s, measure(m)?)?;
            let roots: [ExtendedComplex; 4] =
                rs.roots.clone().try_into().map_err(|_| anyhow!("normal form needs four roots, found {}", rs.roots.len()))?;
            let (t, z0) = normal_form_transform(&roots)?;
            out.set("roots", roots_text(&roots));
            out.set("z0", [z0.re, z0.im]);
            let image: Vec<ExtendedComplex> = roots.iter().map(|z| t.apply(z)).collect();
            out.set("normal_roots", roots_text(&image));
            out.set("mobius", matrix_json(&t.to_matrix()));
            out.set("operator", matrix_json(&entangle_core::slocc::operator_from_mobius(&t)));
            out.tol("normal_system", tol.max(1e-8));
            let normal = entangle_core::slocc::mobius::is_normal_system(&image, tol.max(1e-8));
            out.set("is_normal_system", normal);
            out.require(normal);
        }
        SloccCmd::Lm { a, b } => {
            let pa = read_state(a, out)?;
            let pb = read_state(b, out)?;
            out.tol("phase_system", entangle_core::slocc::lm::LM_TOL);
            match lm_equivalence(&pa, &pb)? {
                Some(w) => {
                    out.set("equivalent", true);
                    out.set("permutations", w.perms.iter().map(|p| one_based(p)).collect::<Vec<_>>());
                    out.set("operators", w.ops.iter().map(matrix_json).collect::<Vec<_>>());
                    out.set("scalar", [w.scalar.re, w.scalar.im]);
                }
                None => {
                    out.set("equivalent", false);
                    out.require(false);
                }
            }
        }
    }
    Ok(())
}

fn matrix_json(m: &entangle_core::CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn ham_check(g: &Hypergraph, tol: f64, out: &mut Outcome) -> Result<()> {
    let e = g.n_edges() as f64;
    out.tol("eigenvector_overlap", tol);
    out.set("vertices", g.n_vertices());
    out.set("edges", g.n_edges());
    let rep = spectrum_report(&hamiltonian_2exc(g)?, g)?;
    out.set(
        "two_excitation",
        json!({
            "top": rep.top, "second": rep.second, "gap": rep.gap, "overlap": rep.overlap,
            "equals_edges": (rep.top - e).abs() < tol, "equals_edges_squared": (rep.top - e * e).abs() < tol,
        }),
    );
    let mut ok = (rep.overlap - 1.0).abs() < tol && rep.gap > tol;
    let rep3 = spectrum_report(&hamiltonian_3body(g)?, g)?;
    let mut three = json!({"top": rep3.top, "second": rep3.second, "gap": rep3.gap, "overlap": rep3.overlap, "regular": g.is_regular()});
    if g.is_regular() {
        let d = g.degree(0)? as f64;
        three["equals_twice_degree"] = json!((rep3.top - 2.0 * d).abs() < tol);
        ok &= (rep3.overlap - 1.0).abs() < tol && rep3.gap > tol;
    } else {
        three["warning"] = json!("graph is not regular; no eigenvalue statement applies");
    }
    out.set("three_body", three);
    out.require(ok);
    Ok(())
}

fn group_report(g: &PermGroup, out: &mut Outcome) {
    out.set("points", g.n());
    out.set("order", g.order());
    out.set("elements", g.elements().map(|p| p.to_one_line()).collect::<Vec<_>>());
}
