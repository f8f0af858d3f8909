//! `lhom`: invariants, kernels, forbidding polynomials and lower-bound
//! gadgets for list homomorphisms to a fixed target graph.
//!
//! Exit codes: 0 success, 1 NO answer from `solve`, 2 usage or input
//! error, 3 budget exhaustion, certification failure or a kernel that
//! disagrees with its input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lhom_core::forbid::{forbid_linear_system, forbid_monomial, greedy_incomparable_list, ForbidRequest, Forbidder};
use lhom_core::generators::{
    complete_graph, cycle, gen_cycle_power, gen_instance_with, gen_subdivided_star, random_hgraph, InstanceMode,
    InstanceParams, SplitMix64,
};
use lhom_core::invariants::{classify_with, find_lbs, find_non_bi_arc_witness, LowerBoundStructure};
use lhom_core::io::{parse_cnf, parse_hgraph, parse_instance, write_hgraph, write_instance};
use lhom_core::kernel::{check_kernel_shape, KernelReport};
use lhom_core::reduction::{
    build_comp, build_neq, build_variable_gadget, certify_gadget, certify_variable_gadget, reduce_sat,
};
use lhom_core::solver::{budget_from_env, decide_two_phase, decide_with_budget};
use lhom_core::{ColorSet, Error, Family, HGraph, Instance, Invariants, KernelMethod, Kernelizer};

const SCHEMA: &str = "lhom/1";

#[derive(Parser)]
#[command(name = "lhom", version, about = "List homomorphisms to a fixed graph, parameterized by vertex cover")]
struct Cli {
    /// Print one JSON object on standard output instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Number of worker threads.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// c*, d*, maximum degree, witnesses and the kernel strategy for a target graph.
    Invariants {
        target: PathBuf,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Decide an instance.
    Solve {
        instance: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Print a list homomorphism when one exists.
        #[arg(long)]
        witness: bool,
        /// Enumerate colorings of the cover and test extendability instead.
        #[arg(long)]
        two_phase: bool,
    },
    /// Kernelize an instance.
    Kernel(KernelArgs),
    /// Decide an instance and its kernel and compare.
    VerifyKernel(KernelArgs),
    /// Synthesize and certify a forbidding polynomial.
    Forbid {
        #[arg(long)]
        target: PathBuf,
        /// The list L, comma separated.
        #[arg(long)]
        list: String,
        /// The tuple S0, comma separated.
        #[arg(long)]
        tuple: String,
        /// Per-position lists, `;` between positions; defaults to a maximal
        /// incomparable set around each entry of the tuple.
        #[arg(long)]
        lists: Option<String>,
        /// Cover vertices carrying the tuple; defaults to 0..r.
        #[arg(long)]
        verts: Option<String>,
        /// Solve the linear system at this degree instead of the default dispatch.
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Reduce a DIMACS CNF to an instance with a linear-size vertex cover.
    ReduceSat {
        cnf: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Order of the lower bound structure to use; defaults to d*.
        #[arg(long)]
        lbs_order: Option<usize>,
        /// Write the instance here instead of standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Build and exhaustively check every gadget and the variable gadget.
    GadgetCheck {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        lbs_order: Option<usize>,
    },
    /// Generate target graphs and instances.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
}

#[derive(Args)]
struct FamilyArg {
    /// The target is the cycle power C_k^p, given as `k,p`.
    #[arg(long, value_name = "K,P")]
    cycle_power: Option<String>,
}

#[derive(Args)]
struct KernelArgs {
    instance: PathBuf,
    #[arg(long)]
    target: PathBuf,
    #[arg(long, value_enum, default_value = "poly")]
    method: MethodArg,
    /// Write the kernel here.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Print the kernel statistics as JSON.
    #[arg(long)]
    stats_json: bool,
    #[command(flatten)]
    family: FamilyArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Marking,
    Poly,
}

#[derive(Subcommand)]
enum GenCmd {
    /// A target graph.
    Hgraph {
        #[arg(value_enum)]
        kind: GraphKind,
        /// Cycle length, or clique size for `complete`.
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Power for `cycle-power`.
        #[arg(long, default_value_t = 1)]
        p: usize,
        /// Leaves for `star`.
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Vertices for `random`.
        #[arg(long, default_value_t = 6)]
        h: usize,
        #[arg(long, default_value_t = 0.5)]
        p_edge: f64,
        #[arg(long, default_value_t = 0.2)]
        p_loop: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A random instance with a planted vertex cover on vertices 0..k.
    Instance {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0.3)]
        p_cover_edge: f64,
        #[arg(long, default_value_t = 0.5)]
        p_cross_edge: f64,
        #[arg(long, default_value_t = 0.5)]
        p_color: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Cycle,
    CyclePower,
    Complete,
    Star,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Random,
    PlantedYes,
}

enum Failure {
    Usage(String),
    Hard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Hard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Hard(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } | Error::InvalidGraph(_) | Error::InvalidInstance(_) | Error::InvalidArgument(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Hard(e.to_string()),
        }
    }
}

/// What a command produces: a JSON body (without the schema tag), the
/// text for humans and the exit code.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output { json, text, code: 0 }
    }
}

type CmdResult = Result<Output, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("lhom: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let json_mode = cli.json || matches!(&cli.cmd, Cmd::Kernel(a) | Cmd::VerifyKernel(a) if a.stats_json);
    match run(cli.cmd) {
        Ok(out) => {
            if json_mode {
                println!("{}", tagged(out.json));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("lhom: {}", f.message());
            if json_mode {
                println!("{}", tagged(json!({ "error": f.message(), "exit_code": f.code() })));
            }
            ExitCode::from(f.code())
        }
    }
}

fn tagged(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), Value::from(SCHEMA));
    }
    v
}

fn run(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Invariants { target, family } => cmd_invariants(&target, &family),
        Cmd::Solve {
            instance,
            target,
            witness,
            two_phase,
        } => cmd_solve(&instance, &target, witness, two_phase),
        Cmd::Kernel(args) => cmd_kernel(&args),
        Cmd::VerifyKernel(args) => cmd_verify_kernel(&args),
        Cmd::Forbid {
            target,
            list,
            tuple,
            lists,
            verts,
            degree,
            family,
        } => cmd_forbid(&target, &list, &tuple, lists.as_deref(), verts.as_deref(), degree, &family),
        Cmd::ReduceSat {
            cnf,
            target,
            lbs_order,
            emit,
        } => cmd_reduce_sat(&cnf, &target, lbs_order, emit.as_deref()),
        Cmd::GadgetCheck { target, lbs_order } => cmd_gadget_check(&target, lbs_order),
        Cmd::Gen { what } => cmd_gen(what),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_target(path: &Path) -> Result<HGraph, Failure> {
    Ok(parse_hgraph(&read(path)?)?)
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    Ok(parse_instance(&read(path)?)?)
}

fn numbers(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("{what}: `{t}` is not a number"))))
        .collect()
}

fn color_set(s: &str, what: &str) -> Result<ColorSet, Failure> {
    let v = numbers(s, what)?;
    if let Some(&c) = v.iter().find(|&&c| c >= lhom_core::colorset::MAX_COLORS) {
        return Err(Failure::Usage(format!("{what}: color {c} out of range")));
    }
    Ok(v.into_iter().collect())
}

fn family(arg: &FamilyArg, hg: &HGraph) -> Result<Family, Failure> {
    let Some(s) = &arg.cycle_power else {
        return Ok(Family::Generic);
    };
    let v = numbers(s, "--cycle-power")?;
    let [k, p] = v[..] else {
        return Err(Failure::Usage("--cycle-power expects `k,p`".into()));
    };
    let f = Family::cycle_power(k, p);
    f.validate(hg)?;
    Ok(f)
}

fn lbs_json(l: &LowerBoundStructure) -> Value {
    json!({ "order": l.order, "list": l.list.to_vec(), "xs": l.xs, "xps": l.xps })
}

fn cmd_invariants(target: &Path, fam: &FamilyArg) -> CmdResult {
    let hg = load_target(target)?;
    let family = family(fam, &hg)?;
    let inv = Invariants::compute(&hg)?;
    let class = classify_with(&hg, family, &inv)?;
    let walk = find_non_bi_arc_witness(&hg);
    let json = json!({
        "h": hg.h(),
        "c_star": inv.c(),
        "d_star": inv.d_star,
        "delta": inv.delta,
        "c_star_witness": { "list": inv.c_star.list.to_vec(), "set": inv.c_star.set.to_vec() },
        "lower_bound_structure": lbs_json(&inv.lbs),
        "non_bi_arc_walk": walk.as_ref().map(|w| w.walk.to_vec()),
        "max_degree_regime": inv.in_max_degree_regime(),
        "classification": class,
    });
    let mut text = format!(
        "c* = {}   (S = {:?}, L = {:?})\nd* = {}   (L = {:?}, x = {:?}, x' = {:?})\nmax degree = {}\n",
        inv.c(),
        inv.c_star.set.to_vec(),
        inv.c_star.list.to_vec(),
        inv.d_star,
        inv.lbs.list.to_vec(),
        inv.lbs.xs,
        inv.lbs.xps,
        inv.delta
    );
    text += &format!(
        "regime: {}\nrecommended kernel degree: {} (via {})\nlower bound exponent: {}\n",
        class.regime, class.recommended_degree, class.synthesis_method, class.lower_bound_exponent
    );
    match walk {
        Some(w) => text += &format!("walk witness (not bi-arc): {:?}\n", w.walk),
        None => text += "walk witness: none\n",
    }
    Ok(Output::ok(json, text))
}

fn cmd_solve(instance: &Path, target: &Path, witness: bool, two_phase: bool) -> CmdResult {
    let hg = load_target(target)?;
    let inst = load_instance(instance)?;
    let budget = budget_from_env();
    let (yes, phi) = if two_phase {
        (decide_two_phase(&inst, &hg, budget)?, None)
    } else {
        let phi = decide_with_budget(&inst, &hg, budget)?;
        (phi.is_some(), phi)
    };
    let mut text = format!("{}\n", if yes { "YES" } else { "NO" });
    if let (true, Some(phi)) = (witness, &phi) {
        for (v, c) in phi.iter().enumerate() {
            text += &format!("{v} -> {c}\n");
        }
    }
    let json = json!({
        "answer": if yes { "yes" } else { "no" },
        "witness": if witness { phi.map(Value::from) } else { None },
    });
    Ok(Output {
        json,
        text,
        code: if yes { 0 } else { 1 },
    })
}

fn kernelize(args: &KernelArgs) -> Result<(HGraph, Instance, KernelReport), Failure> {
    let hg = load_target(&args.target)?;
    let inst = load_instance(&args.instance)?;
    let family = family(&args.family, &hg)?;
    let kz = Kernelizer::new(&hg, family)?;
    let report = match args.method {
        MethodArg::Marking => kz.marking(&inst)?,
        MethodArg::Poly => kz.poly(&inst)?,
    };
    check_kernel_shape(&inst, &report)?;
    Ok((hg, inst, report))
}

fn kernel_comments(r: &KernelReport) -> Vec<String> {
    vec![format!(
        "method={} degree={} vin={} vout={}",
        r.method.name(),
        r.degree_used,
        r.vertices_in,
        r.vertices_out
    )]
}

fn cmd_kernel(args: &KernelArgs) -> CmdResult {
    let (_, _, report) = kernelize(args)?;
    let text_inst = write_instance(&report.kernel, &kernel_comments(&report));
    if let Some(path) = &args.emit {
        write(path, &text_inst)?;
    }
    let mut json = serde_json::to_value(&report).expect("report serializes");
    json["emitted"] = json!(args.emit.as_ref().map(|p| p.display().to_string()));
    let mut text = format!(
        "{} kernel: {} -> {} vertices, {} -> {} edges, degree {}, cover {}\n",
        report.method.name(),
        report.vertices_in,
        report.vertices_out,
        report.edges_in,
        report.edges_out,
        report.degree_used,
        report.bound_k
    );
    if report.method == KernelMethod::Poly {
        text += &format!(
            "equalities: {} generated, {} kept in the basis\n",
            report.equations_total, report.retained_constraints
        );
    }
    if args.emit.is_none() {
        text += &text_inst;
    }
    Ok(Output::ok(json, text))
}

fn cmd_verify_kernel(args: &KernelArgs) -> CmdResult {
    let (hg, inst, report) = kernelize(args)?;
    if let Some(path) = &args.emit {
        write(path, &write_instance(&report.kernel, &kernel_comments(&report)))?;
    }
    let budget = budget_from_env();
    let input = decide_with_budget(&inst, &hg, budget)?.is_some();
    let kernel = decide_with_budget(&report.kernel, &hg, budget)?.is_some();
    let agree = input == kernel;
    let json = json!({
        "method": report.method,
        "input_yes": input,
        "kernel_yes": kernel,
        "agree": agree,
        "vertices_in": report.vertices_in,
        "vertices_out": report.vertices_out,
        "edges_in": report.edges_in,
        "edges_out": report.edges_out,
    });
    let yn = |b: bool| if b { "YES" } else { "NO" };
    let text = format!(
        "input {}, {} kernel {} ({} -> {} vertices): {}\n",
        yn(input),
        report.method.name(),
        yn(kernel),
        report.vertices_in,
        report.vertices_out,
        if agree { "agree" } else { "DISAGREE" }
    );
    Ok(Output {
        json,
        text,
        code: if agree { 0 } else { 3 },
    })
}

fn cmd_forbid(
    target: &Path,
    list: &str,
    tuple: &str,
    lists: Option<&str>,
    verts: Option<&str>,
    degree: Option<usize>,
    fam: &FamilyArg,
) -> CmdResult {
    let hg = load_target(target)?;
    let family = family(fam, &hg)?;
    let l = color_set(list, "--list")?;
    let tuple = numbers(tuple, "--tuple")?;
    let r = tuple.len();
    if r == 0 {
        return Err(Failure::Usage("--tuple is empty".into()));
    }
    let lists: Vec<ColorSet> = match lists {
        Some(s) => s.split(';').map(|p| color_set(p, "--lists")).collect::<Result<_, _>>()?,
        None => tuple
            .iter()
            .map(|&s| {
                if s < hg.h() {
                    greedy_incomparable_list(&hg, s)
                } else {
                    ColorSet::singleton(s.min(lhom_core::colorset::MAX_COLORS - 1))
                }
            })
            .collect(),
    };
    let verts = match verts {
        Some(s) => numbers(s, "--verts")?,
        None => (0..r).collect(),
    };
    let req = ForbidRequest::new(&hg, l, lists, verts, tuple)?;
    let res = match degree {
        None => Forbidder::new(&hg, family)?.forbid(&req)?,
        Some(d) => {
            let res = forbid_linear_system(&hg, &req, d)?.ok_or_else(|| {
                Failure::Hard(format!("the linear system has no solution of degree {d}"))
            })?;
            let res = if res.degree > d { forbid_monomial(&hg, &req) } else { res };
            if res.degree > d {
                return Err(Failure::Hard(format!("no polynomial of degree at most {d} found")));
            }
            if !lhom_core::forbid::certify_forbid(&hg, &req, &res.poly, budget_from_env())? {
                return Err(Failure::Hard("synthesized polynomial failed certification".into()));
            }
            res
        }
    };
    let shown = res.poly.display(hg.h());
    let json = json!({
        "polynomial": shown,
        "degree": res.degree,
        "method": res.method.name(),
        "monomials": res.poly.len(),
        "lists": req.lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>(),
        "verts": req.verts,
        "certified": true,
    });
    let text = format!(
        "{shown}\n# degree {} via {}, {} monomials, certified\n",
        res.degree,
        res.method.name(),
        res.poly.len()
    );
    Ok(Output::ok(json, text))
}

fn structure(hg: &HGraph, order: Option<usize>) -> Result<LowerBoundStructure, Failure> {
    let lbs = match order {
        Some(0) => return Err(Failure::Usage("--lbs-order must be positive".into())),
        Some(d) => find_lbs(hg, d).ok_or_else(|| Failure::Usage(format!("no lower bound structure of order {d}")))?,
        None => Invariants::compute(hg)?.lbs,
    };
    if lbs.order < 3 {
        return Err(Failure::Usage(format!(
            "the gadgets need a lower bound structure of order at least 3, found {}",
            lbs.order
        )));
    }
    Ok(lbs)
}

fn cmd_reduce_sat(cnf: &Path, target: &Path, order: Option<usize>, emit: Option<&Path>) -> CmdResult {
    let hg = load_target(target)?;
    let cnf = parse_cnf(&read(cnf)?)?;
    let lbs = structure(&hg, order)?;
    let inst = reduce_sat(&cnf, &hg, &lbs)?;
    let cover = inst.cover.as_ref().map_or(0, Vec::len);
    let comments = vec![format!(
        "reduce-sat vars={} clauses={} lbs-order={} cover={}",
        cnf.vars,
        cnf.clauses.len(),
        lbs.order,
        cover
    )];
    let body = write_instance(&inst, &comments);
    if let Some(path) = emit {
        write(path, &body)?;
    }
    let json = json!({
        "vars": cnf.vars,
        "clauses": cnf.clauses.len(),
        "lower_bound_structure": lbs_json(&lbs),
        "vertices": inst.vertex_count(),
        "edges": inst.graph.edge_count(),
        "cover_size": cover,
        "emitted": emit.map(|p| p.display().to_string()),
        "instance": if emit.is_none() { Some(body.clone()) } else { None },
    });
    let text = match emit {
        Some(p) => format!(
            "{} vertices, {} edges, cover {}; written to {}\n",
            inst.vertex_count(),
            inst.graph.edge_count(),
            cover,
            p.display()
        ),
        None => body,
    };
    Ok(Output::ok(json, text))
}

fn cmd_gadget_check(target: &Path, order: Option<usize>) -> CmdResult {
    let hg = load_target(target)?;
    let lbs = structure(&hg, order)?;
    let d = lbs.order;
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut all_ok = true;
    let mut record = |name: String, built: lhom_core::Result<lhom_core::reduction::Gadget>| -> Result<(), Failure> {
        let (ok, vertices, restrictions) = match built {
            Ok(g) => {
                let cert = certify_gadget(&hg, &g)?;
                (cert.ok, g.vertex_count(), cert.restrictions)
            }
            Err(Error::Certification(_)) => (false, 0, Vec::new()),
            Err(e) => return Err(e.into()),
        };
        all_ok &= ok;
        text += &format!("{name}: {} ({vertices} vertices)\n", if ok { "ok" } else { "FAILED" });
        entries.push(json!({ "gadget": name, "ok": ok, "vertices": vertices, "restrictions": restrictions }));
        Ok(())
    };
    for i in 0..d {
        record(format!("NEQ({i})"), build_neq(&hg, &lbs, i))?;
    }
    for i in 0..d {
        for j in (0..d).filter(|&j| j != i) {
            record(format!("Comp({i},{j})"), build_comp(&hg, &lbs, i, j))?;
        }
    }
    let (var_ok, var_vertices, var_restrictions) = match build_variable_gadget(&hg, &lbs) {
        Ok(vg) => {
            let cert = certify_variable_gadget(&hg, &vg)?;
            (cert.ok, cert.vertex_count, cert.restrictions)
        }
        Err(Error::Certification(_)) => (false, 0, Vec::new()),
        Err(e) => return Err(e.into()),
    };
    all_ok &= var_ok;
    text += &format!(
        "variable gadget: {} ({var_vertices} vertices, {} restrictions)\n",
        if var_ok { "ok" } else { "FAILED" },
        var_restrictions.len()
    );
    let json = json!({
        "lower_bound_structure": lbs_json(&lbs),
        "gadgets": entries,
        "variable_gadget": { "ok": var_ok, "vertices": var_vertices, "restrictions": var_restrictions },
        "ok": all_ok,
    });
    Ok(Output {
        json,
        text,
        code: if all_ok { 0 } else { 3 },
    })
}

fn cmd_gen(what: GenCmd) -> CmdResult {
    let (body, out, kind) = match what {
        GenCmd::Hgraph {
            kind,
            k,
            p,
            r,
            h,
            p_edge,
            p_loop,
            seed,
            out,
        } => {
            let need = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(Failure::Usage(msg.into())) };
            let (hg, comment) = match kind {
                GraphKind::Cycle => {
                    need(k >= 3, "--k must be at least 3")?;
                    (cycle(k), format!("cycle k={k}"))
                }
                GraphKind::CyclePower => {
                    need(k >= 3 && p >= 1, "--k must be at least 3 and --p at least 1")?;
                    (gen_cycle_power(k, p), format!("cycle-power k={k} p={p}"))
                }
                GraphKind::Complete => {
                    need((1..=lhom_core::colorset::MAX_COLORS).contains(&k), "--k out of range")?;
                    (complete_graph(k), format!("complete k={k}"))
                }
                GraphKind::Star => {
                    need(r >= 1 && 3 * r < lhom_core::colorset::MAX_COLORS, "--r out of range")?;
                    (gen_subdivided_star(r), format!("subdivided-star r={r}"))
                }
                GraphKind::Random => {
                    need((1..=lhom_core::colorset::MAX_COLORS).contains(&h), "--h out of range")?;
                    let mut rng = SplitMix64::new(seed);
                    (
                        random_hgraph(h, p_edge, p_loop, &mut rng),
                        format!("random h={h} p-edge={p_edge} p-loop={p_loop} seed={seed} rng=splitmix64"),
                    )
                }
            };
            (write_hgraph(&hg, &[comment]), out, "hgraph")
        }
        GenCmd::Instance {
            target,
            n,
            k,
            seed,
            mode,
            p_cover_edge,
            p_cross_edge,
            p_color,
            out,
        } => {
            let hg = load_target(&target)?;
            if k > n {
                return Err(Failure::Usage("--k must not exceed --n".into()));
            }
            let (mode, name) = match mode {
                ModeArg::Random => (InstanceMode::Random, "random"),
                ModeArg::PlantedYes => (InstanceMode::PlantedYes, "planted-yes"),
            };
            let params = InstanceParams {
                p_cover_edge,
                p_cross_edge,
                p_color,
            };
            let inst = gen_instance_with(&hg, n, k, seed, mode, &params);
            let comment = format!(
                "gen n={n} k={k} seed={seed} mode={name} p-cover-edge={p_cover_edge} p-cross-edge={p_cross_edge} p-color={p_color} rng=splitmix64"
            );
            (write_instance(&inst, &[comment]), out, "instance")
        }
    };
    if let Some(path) = &out {
        write(path, &body)?;
    }
    let json = json!({
        "kind": kind,
        "out": out.as_ref().map(|p| p.display().to_string()),
        "text": if out.is_none() { Some(body.clone()) } else { None },
    });
    let text = if out.is_some() { String::new() } else { body };
    Ok(Output::ok(json, text))
}
