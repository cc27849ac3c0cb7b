use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::config::parse_config;
use super::export::{Format, GraphDoc};
use super::*;
use crate::coloring::{coloring_map, estimate_f_g, exact_chromatic, verify_growth_bound, ColoringError, FgEstimate, GrowthReport};
use crate::csequence::LadderSystem;
use crate::graph::Graph;
use crate::graphprops::{shortest_odd_cycle_upto, verify_hm_graph, Check, SuiteReport};
use crate::growthbuild::{build_growth_hm, check_decomposition, classify_edges, derive_params, derive_params_named, GrowthBuild};
use crate::guessing::{antibuild, check_guessing, check_strong_guessing, validate_condition, verify_witness, PosetCondition, TypeSequence};
use crate::hmbuild::{build_cohen_hm, build_tree_hm, diagonal_branch, diagonal_conflict, force_monochromatic_edge, replay, BuildParams, BuildTrace, Stream, TreeNode};
use crate::ordinal::{Ordinal, Universe};
use crate::specker::{materialize, sampled_odd_cycle_check};
use crate::types::{realize, specker_type, type_of, DisjointType};

pub(super) fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Types { op } => types(op),
        Command::Specker(a) => specker(a),
        Command::BuildHm(a) => build_hm(a),
        Command::BuildTreeHm(a) => build_tree(a),
        Command::BuildGrowth(a) => build_growth(a),
        Command::Verify(a) => verify(a),
        Command::Chromatic(a) => chromatic(a),
        Command::GrowthReport(a) => growth_report(a),
        Command::Guess { op } => guess(op),
        Command::Export(a) => export(a),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_list<T: FromStr>(text: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| CliError::Config(format!("{s:?}: {e}"))))
        .collect()
}

fn parse_type(text: &str) -> Result<DisjointType, CliError> {
    text.parse().map_err(|e| CliError::Config(format!("{text:?}: {e}")))
}

fn universe(a: &UniverseArgs) -> Result<Universe, CliError> {
    if a.m < 2 {
        return Err(CliError::Config(format!("M must be at least 2, got {}", a.m)));
    }
    Universe::new(a.m, a.w).map_err(CliError::config)
}

fn ladders(u: &Universe, a: &LadderArgs, seed: u64) -> Result<LadderSystem, CliError> {
    match a.ladders {
        LadderKind::Seeded => Ok(LadderSystem::seeded(u, seed)),
        LadderKind::Canonical => Ok(LadderSystem::canonical(u)),
        LadderKind::Rich => {
            let path = a.family.as_ref().ok_or_else(|| CliError::Config("--ladders rich needs --family".into()))?;
            let family = read(path)?
                .lines()
                .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .map(parse_list::<Ordinal>)
                .collect::<Result<Vec<_>, _>>()?;
            LadderSystem::rich(u, &family).map_err(CliError::config)
        }
        LadderKind::File => {
            let path = a.ladder_file.as_ref().ok_or_else(|| CliError::Config("--ladders file needs --ladder-file".into()))?;
            let l = LadderSystem::from_json(&read(path)?).map_err(CliError::config)?;
            if l.universe() != u {
                return Err(CliError::Config("ladder file does not match --m/--w".into()));
            }
            Ok(l)
        }
    }
}

/// The verifier selection: suite checks plus whether to replay the trace.
fn parse_checks(text: &str) -> Result<(Vec<Check>, bool), CliError> {
    match text.trim() {
        "all" => return Ok((Check::ALL.to_vec(), true)),
        "none" => return Ok((Vec::new(), false)),
        _ => {}
    }
    let mut checks = Vec::new();
    let mut replay = false;
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name == "replay" {
            replay = true;
        } else {
            checks.push(name.parse::<Check>().map_err(CliError::Config)?);
        }
    }
    Ok((checks, replay))
}

/// `ordinal = k` lines with an optional `default = k` (0 if absent).
struct ColorTable {
    values: BTreeMap<Ordinal, u64>,
    default: u64,
}

impl ColorTable {
    fn load(path: &Path) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        let mut default = 0;
        for (key, value) in parse_config(&read(path)?)? {
            let v: u64 = value.parse().map_err(|_| CliError::Config(format!("color {value:?} is not a natural number")))?;
            if key == "default" {
                default = v;
            } else {
                values.insert(key.parse::<Ordinal>().map_err(|e| CliError::Config(format!("{key:?}: {e}")))?, v);
            }
        }
        Ok(Self { values, default })
    }

    fn constant(default: u64) -> Self {
        Self { values: BTreeMap::new(), default }
    }

    fn get(&self, a: &Ordinal) -> u64 {
        self.values.get(a).copied().unwrap_or(self.default)
    }
}

fn suite_lines(report: &SuiteReport, human: &mut String) {
    for c in &report.checks {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        writeln!(human, "{verdict} {}", c.check.name()).unwrap();
        for v in c.violations.iter().take(5) {
            writeln!(human, "  {v}").unwrap();
        }
    }
}

fn types(op: &TypesOp) -> Result<Outcome, CliError> {
    let (json, human) = match op {
        TypesOp::Depth { ty } => {
            let t = parse_type(ty)?;
            (json!({ "type": t, "depth": t.depth() }), format!("{}\n", t.depth()))
        }
        TypesOp::Width { ty } => {
            let t = parse_type(ty)?;
            (json!({ "type": t, "width": t.width() }), format!("{}\n", t.width()))
        }
        TypesOp::Opposite { ty } => {
            let t = parse_type(ty)?.opposite();
            (json!({ "opposite": t }), format!("{t}\n"))
        }
        TypesOp::Concat { a, b } => {
            let t = parse_type(a)?.concat(&parse_type(b)?);
            (json!({ "concat": t }), format!("{t}\n"))
        }
        TypesOp::Of { a, b } => {
            let (a, b) = (parse_list::<Ordinal>(a)?, parse_list::<Ordinal>(b)?);
            let t = type_of(&a, &b).map_err(CliError::config)?;
            (json!({ "type": t }), format!("{t}\n"))
        }
        TypesOp::Specker { n, s } => {
            let t = specker_type(*n, *s).map_err(CliError::config)?;
            (json!({ "type": t, "depth": t.depth() }), format!("{t}\n"))
        }
        TypesOp::Realize { ty } => {
            let (a, b) = realize(&parse_type(ty)?);
            let show = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            (json!({ "a": a, "b": b }), format!("{}\n{}\n", show(&a), show(&b)))
        }
        TypesOp::List { n } => {
            let all: Vec<DisjointType> = DisjointType::all_of_width(*n).collect();
            let human = all.iter().map(|t| format!("{t} depth {}\n", t.depth())).collect();
            (json!({ "types": all }), human)
        }
    };
    Ok(Outcome { json, human, ok: true })
}

fn specker(a: &SpeckerArgs) -> Result<Outcome, CliError> {
    let t = specker_type(a.n, a.s).map_err(CliError::config)?;
    let max_len = a.odd_girth.unwrap_or(2 * a.s + 1);
    if a.sample {
        let seed = a.seed.ok_or_else(|| CliError::Config("--sample needs --seed".into()))?;
        let r = sampled_odd_cycle_check(&t, a.points, a.samples, a.max_size, max_len, seed).map_err(CliError::config)?;
        let json = json!({
            "type": t, "points": a.points, "max_len": max_len, "samples": r.samples,
            "largest_sample": r.largest_sample, "edges_examined": r.edges_examined, "odd_cycle": r.witness,
        });
        let human = format!(
            "{} samples (largest {}), {} edges examined, odd cycle <= {max_len}: {}\n",
            r.samples,
            r.largest_sample,
            r.edges_examined,
            if r.witness.is_some() { "FOUND" } else { "none" }
        );
        return Ok(Outcome { ok: r.witness.is_none(), json, human });
    }
    let tg = materialize(&t, a.points).map_err(CliError::config)?;
    let g = tg.graph();
    let names: Vec<String> = (0..g.vertex_count()).map(|i| tg.vertex_name(i)).collect();
    let odd = shortest_odd_cycle_upto(g, max_len).map(|c| c.cycle.iter().map(|&i| names[i].clone()).collect::<Vec<_>>());
    let mut human = format!("{} vertices, {} edges\nodd cycle <= {max_len}: ", g.vertex_count(), g.edge_count());
    human.push_str(&odd.as_ref().map_or("none".to_string(), |c| c.join(" -- ")));
    human.push('\n');
    let mut json = json!({
        "type": t, "points": a.points, "vertices": g.vertex_count(), "edges": g.edge_count(),
        "max_len": max_len, "odd_cycle": odd,
    });
    let mut ok = odd.is_none();
    if a.chromatic {
        match exact_chromatic(g, a.budget) {
            Ok(sol) => {
                writeln!(human, "chromatic number {}", sol.chi).unwrap();
                json["chromatic"] = json!(sol.chi);
            }
            Err(e) => {
                writeln!(human, "chromatic number unknown: {e}").unwrap();
                json["chromatic_error"] = json!(e.to_string());
                ok = false;
            }
        }
    }
    if let Some(k) = a.fg {
        if k < 2 {
            return Err(CliError::Config("--fg needs k >= 2".into()));
        }
        match estimate_f_g(g, k, a.fg_cap, a.budget) {
            Ok(FgEstimate::Exact { value, witness }) => {
                writeln!(human, "f_G({k}) = {value}").unwrap();
                json["f_g"] = json!({ "k": k, "value": value, "witness": witness.iter().map(|&i| &names[i]).collect::<Vec<_>>() });
            }
            Ok(FgEstimate::Above { cap }) => {
                writeln!(human, "f_G({k}) > {cap}").unwrap();
                json["f_g"] = json!({ "k": k, "above": cap });
            }
            Err(e) => {
                writeln!(human, "f_G({k}) unknown: {e}").unwrap();
                ok = false;
            }
        }
    }
    if let Some(out) = &a.out {
        let doc = GraphDoc {
            vertices: names.clone(),
            edges: g.edges().map(|(u, v)| EdgeDoc::Plain(names[u].clone(), names[v].clone())).collect(),
        };
        write(out, &doc.render(a.format))?;
    }
    Ok(Outcome { json, human, ok })
}

fn graph_file(format: Format) -> &'static str {
    match format {
        Format::Json => "graph.json",
        Format::Dot => "graph.dot",
    }
}

fn build_hm(a: &BuildHmArgs) -> Result<Outcome, CliError> {
    let u = universe(&a.universe)?;
    let ladders = ladders(&u, &a.ladders, a.seed)?;
    let params = BuildParams::new(a.hm.n, a.hm.s, a.hm.k_max);
    params.validate(u.prefix_width()).map_err(CliError::config)?;
    let (checks, want_replay) = parse_checks(&a.verify)?;
    let mut stream = Stream::new(a.seed).with_schedule(a.stream_base, a.stream_slope);
    if let Some(prefix) = &a.stream_prefix {
        stream = stream.with_prefix(parse_list(prefix)?);
    } else if let Some(len) = a.pin {
        stream = stream.pinned(len);
    }
    let mut human = String::new();
    let mut injection = None;
    let mut injection_ok = true;
    let mut colors = None;
    if let Some(path) = &a.inject_f {
        let table = ColorTable::load(path)?;
        let f = |x: &Ordinal| table.get(x);
        match force_monochromatic_edge(&ladders, &stream, &f, params).map_err(CliError::config)? {
            Some(inj) => {
                writeln!(human, "injected {} -- {} (color {}) at stream position {}", inj.alpha, inj.beta, inj.color, inj.position).unwrap();
                stream = inj.stream.clone();
                injection = Some(inj);
            }
            None => {
                writeln!(human, "FAIL injection: no admissible monochromatic pair").unwrap();
                injection_ok = false;
            }
        }
        colors = Some(table);
    }
    let build = build_cohen_hm(&ladders, &stream, params).map_err(CliError::config)?;
    let g = &build.graph;
    writeln!(human, "{} vertices, {} edges", g.vertex_count(), g.edge_count()).unwrap();
    let report = verify_hm_graph(g, &ladders, params.n, params.s, params.k_max, &checks);
    suite_lines(&report, &mut human);
    let replayed = want_replay.then(|| replay(&build.trace) == build.graph);
    if let Some(r) = replayed {
        writeln!(human, "{} replay", if r { "pass" } else { "FAIL" }).unwrap();
    }
    if let (Some(inj), Some(table)) = (&injection, &colors) {
        let planted = g.has_edge(&inj.alpha, &inj.beta) && table.get(&inj.alpha) == table.get(&inj.beta);
        writeln!(human, "{} planted edge present", if planted { "pass" } else { "FAIL" }).unwrap();
        injection_ok &= planted;
    }
    let ok = report.passed() && replayed != Some(false) && injection_ok;
    let summary = json!({
        "command": "build-hm",
        "m": u.m(), "w": u.prefix_width(), "n": params.n, "s": params.s, "k_max": params.k_max, "seed": a.seed,
        "vertices": g.vertex_count(), "edges": g.edge_count(),
        "checks": report, "replay": replayed, "injection": injection, "passed": ok,
    });
    write(&a.out.join(graph_file(a.format)), &GraphDoc::from_ord_graph(g, |_, _| None).render(a.format))?;
    write(&a.out.join("trace.json"), &pretty(&build.trace))?;
    write(&a.out.join("ladders.json"), &pretty(&ladders))?;
    write(&a.out.join("report.json"), &pretty(&summary))?;
    if let Some(inj) = &injection {
        write(&a.out.join("injection.json"), &pretty(inj))?;
    }
    Ok(Outcome { json: summary, human, ok })
}

/// A coloring of tree nodes: `sum-mod:Q` (sum of values mod Q) or `const:V`.
fn tree_coloring(spec: &str) -> Result<Box<dyn Fn(&TreeNode) -> u64>, CliError> {
    let bad = || CliError::Config(format!("diagonal coloring {spec:?}: expected sum-mod:Q or const:V"));
    let (kind, arg) = spec.split_once(':').ok_or_else(bad)?;
    let v: u64 = arg.trim().parse().map_err(|_| bad())?;
    match kind.trim() {
        "sum-mod" if v > 0 => Ok(Box::new(move |x: &TreeNode| x.values().iter().sum::<u64>() % v)),
        "const" => Ok(Box::new(move |_: &TreeNode| v)),
        _ => Err(bad()),
    }
}

fn build_tree(a: &BuildTreeArgs) -> Result<Outcome, CliError> {
    let u = universe(&a.universe)?;
    let ladders = ladders(&u, &a.ladders, a.seed)?;
    let params = BuildParams::new(a.hm.n, a.hm.s, a.hm.k_max);
    params.validate(u.prefix_width()).map_err(CliError::config)?;
    let (checks, _) = parse_checks(&a.verify)?;
    if a.colors == 0 {
        return Err(CliError::Config("--colors must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut branches: Vec<Vec<u64>> = (0..a.branches)
        .map(|_| (0..u.limit_count()).map(|_| rng.gen_range(0..a.colors)).collect())
        .collect();
    if let Some(path) = &a.branch_file {
        for line in read(path)?.lines().filter(|l| !l.trim().is_empty()) {
            branches.push(parse_list(line)?);
        }
    }
    let coloring = a.diagonal.as_deref().map(tree_coloring).transpose()?;
    let diagonal = coloring.as_ref().map(|c| diagonal_branch(&u, c.as_ref()));
    branches.extend(diagonal.clone());
    let build = build_tree_hm(&ladders, &branches, params).map_err(CliError::config)?;
    let g = &build.graph;
    let mut human = format!("{} branches, {} nodes, {} edges\n", branches.len(), g.vertex_count(), g.edge_count());
    let report = verify_hm_graph(g, &ladders, params.n, params.s, params.k_max, &checks);
    suite_lines(&report, &mut human);
    let conflict = match (&coloring, &diagonal) {
        (Some(c), Some(d)) => diagonal_conflict(&build, d, c.as_ref()),
        _ => None,
    };
    if coloring.is_some() {
        match &conflict {
            Some((lo, hi)) => writeln!(human, "diagonal edge {lo} -- {hi} is monochromatic").unwrap(),
            None => writeln!(human, "no monochromatic edge on the diagonal branch").unwrap(),
        }
    }
    let choices: BTreeMap<String, &Vec<(usize, Ordinal)>> = build.choices.iter().map(|(k, v)| (k.to_string(), v)).collect();
    let summary = json!({
        "command": "build-tree-hm",
        "m": u.m(), "w": u.prefix_width(), "n": params.n, "s": params.s, "k_max": params.k_max, "seed": a.seed,
        "branches": branches, "nodes": g.vertex_count(), "edges": g.edge_count(),
        "checks": report, "diagonal_conflict": conflict.map(|(lo, hi)| [lo.to_string(), hi.to_string()]),
        "choices": choices, "passed": report.passed(),
    });
    write(&a.out.join(graph_file(a.format)), &GraphDoc::from_ord_graph(g, |_, _| None).render(a.format))?;
    write(&a.out.join("ladders.json"), &pretty(&ladders))?;
    write(&a.out.join("report.json"), &pretty(&summary))?;
    Ok(Outcome { ok: report.passed(), json: summary, human })
}

struct GrowthChecks {
    csv: String,
    json: serde_json::Value,
    human: String,
    ok: bool,
}

/// Layer forests, the sampled `χ ≤ 2^{k+1}` bound, the decomposition
/// inequality, and solver overruns below 5% of samples.
fn growth_checks(build: &GrowthBuild, samples: usize, seed: u64, budget: u64) -> GrowthChecks {
    let g = build.graph.graph();
    let k_max = build.params.k_max();
    let classes = classify_edges(g, |u, v| build.label(u, v).expect("labeled edge"), k_max + 1);
    let forests: Vec<bool> = classes.layers.iter().map(Graph::is_forest).collect();
    let mut csv = format!("{}\n", GrowthReport::CSV_HEADER);
    let mut human = String::new();
    let mut ok = forests.iter().all(|&f| f);
    writeln!(human, "{} layers forests: {forests:?}", if ok { "pass" } else { "FAIL" }).unwrap();
    let mut per_k = Vec::new();
    for k in 0..=k_max {
        let f_k = build.params.f[k] as usize;
        let growth = verify_growth_bound(g, f_k, k, samples, seed, budget);
        let decomposition = check_decomposition(build, k, samples, seed, budget);
        let failures = decomposition.failures().len();
        let overrun = growth.skipped * 20 >= samples.max(1);
        let good = growth.passed() && failures == 0 && !overrun;
        ok &= good;
        csv.push_str(&growth.csv_row());
        csv.push('\n');
        writeln!(
            human,
            "{} k={k} f(k)={f_k} max chi {} <= {} ({} skipped), decomposition failures {failures}",
            if good { "pass" } else { "FAIL" },
            growth.max_chi,
            growth.bound,
            growth.skipped
        )
        .unwrap();
        per_k.push(json!({
            "k": k, "growth": growth, "decomposition_failures": failures,
            "decomposition_skipped": decomposition.skipped,
            "layer_anomalies": decomposition.layer_anomalies().len(),
        }));
    }
    GrowthChecks {
        csv,
        json: json!({ "layer_forests": forests, "per_k": per_k, "passed": ok }),
        human,
        ok,
    }
}

fn labeled_doc(build: &GrowthBuild) -> GraphDoc {
    GraphDoc::from_ord_graph(&build.graph, |u, v| build.label(u, v))
}

fn build_growth(a: &BuildGrowthArgs) -> Result<Outcome, CliError> {
    let u = universe(&a.universe)?;
    let ladders = ladders(&u, &a.ladders, a.seed)?;
    let stream = Stream::new(a.seed);
    let params = match (&a.f, a.named) {
        (Some(f), None) => {
            let f: Vec<u64> = parse_list(f)?;
            if f.len() <= a.k_max {
                return Err(CliError::Config(format!("--f lists {} values, k-max {} needs {}", f.len(), a.k_max, a.k_max + 1)));
            }
            derive_params(&f, a.k_max)
        }
        (None, Some(cap)) => derive_params_named(&stream, cap, a.k_max),
        _ => return Err(CliError::Config("give exactly one of --f and --named".into())),
    };
    if params.width_needed() > u.prefix_width() {
        return Err(CliError::Config(format!("f needs ladder width {}, W is {}", params.width_needed(), u.prefix_width())));
    }
    let build = build_growth_hm(&ladders, &stream, &params).map_err(CliError::config)?;
    let checks = growth_checks(&build, a.samples, a.seed, a.budget);
    let human = format!(
        "{} vertices, {} edges, f = {:?}\n{}",
        build.graph.vertex_count(),
        build.graph.edge_count(),
        params.f,
        checks.human
    );
    let summary = json!({
        "command": "build-growth", "m": u.m(), "w": u.prefix_width(), "seed": a.seed,
        "params": params, "vertices": build.graph.vertex_count(), "edges": build.graph.edge_count(),
        "checks": checks.json, "passed": checks.ok,
    });
    write(&a.out.join("graph.json"), &labeled_doc(&build).to_json())?;
    write(&a.out.join("ladders.json"), &pretty(&ladders))?;
    write(&a.out.join("growth.csv"), &checks.csv)?;
    write(&a.out.join("report.json"), &pretty(&summary))?;
    Ok(Outcome { ok: checks.ok, json: summary, human })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let (g, _) = GraphDoc::from_json(&read(&a.graph)?)?.to_ord_graph()?;
    let ladders = LadderSystem::from_json(&read(&a.ladder_file)?).map_err(CliError::config)?;
    let params = BuildParams::new(a.hm.n, a.hm.s, a.hm.k_max);
    params.validate(ladders.width()).map_err(CliError::config)?;
    let (checks, want_replay) = parse_checks(&a.verify)?;
    let report = verify_hm_graph(&g, &ladders, params.n, params.s, params.k_max, &checks);
    let mut human = String::new();
    suite_lines(&report, &mut human);
    let replayed = match (&a.trace, want_replay) {
        (Some(path), true) => {
            let trace: BuildTrace = serde_json::from_str(&read(path)?).map_err(|e| CliError::Config(format!("bad trace: {e}")))?;
            let r = replay(&trace) == g;
            writeln!(human, "{} replay", if r { "pass" } else { "FAIL" }).unwrap();
            Some(r)
        }
        _ => None,
    };
    let ok = report.passed() && replayed != Some(false);
    Ok(Outcome {
        json: json!({ "command": "verify", "checks": report, "replay": replayed, "passed": ok }),
        human,
        ok,
    })
}

fn chromatic(a: &ChromaticArgs) -> Result<Outcome, CliError> {
    let (g, names) = match (&a.graph, &a.ty) {
        (Some(path), _) => {
            let doc = GraphDoc::from_json(&read(path)?)?;
            (doc.to_graph()?, doc.vertices)
        }
        (None, Some(ty)) => {
            let tg = materialize(&parse_type(ty)?, a.points.expect("clap requires --points")).map_err(CliError::config)?;
            let names = (0..tg.graph().vertex_count()).map(|i| tg.vertex_name(i)).collect();
            (tg.graph().clone(), names)
        }
        (None, None) => unreachable!("clap requires --graph or --type"),
    };
    match exact_chromatic(&g, a.budget) {
        Ok(sol) => {
            let map = coloring_map(names, &sol.coloring);
            if let Some(out) = &a.out {
                write(out, &pretty(&map))?;
            }
            Ok(Outcome {
                human: format!("chromatic number {} ({} search nodes)\n", sol.chi, sol.nodes),
                json: json!({ "chi": sol.chi, "nodes": sol.nodes, "coloring": map }),
                ok: true,
            })
        }
        Err(ColoringError::BudgetExceeded { budget, lower, upper, .. }) => Ok(Outcome {
            human: format!("budget of {budget} nodes exceeded: {lower} <= chi <= {upper}\n"),
            json: json!({ "budget_exceeded": budget, "lower": lower, "upper": upper }),
            ok: false,
        }),
    }
}

fn growth_report(a: &GrowthReportArgs) -> Result<Outcome, CliError> {
    let (graph, labels) = GraphDoc::from_json(&read(&a.graph)?)?.to_ord_graph()?;
    if labels.len() != graph.edge_count() {
        return Err(CliError::Config("every edge needs a label".into()));
    }
    let f: Vec<u64> = parse_list(&a.f)?;
    if f.is_empty() {
        return Err(CliError::Config("--f is empty".into()));
    }
    let k_max = a.k_max.unwrap_or(f.len() - 1);
    if k_max >= f.len() {
        return Err(CliError::Config(format!("--f lists {} values, k-max {k_max} needs {}", f.len(), k_max + 1)));
    }
    if let Some(&bad) = labels.values().find(|&&k| k > k_max) {
        return Err(CliError::Config(format!("edge label {bad} exceeds k-max {k_max}")));
    }
    let build = GrowthBuild {
        graph,
        labels,
        params: derive_params(&f, k_max),
    };
    let checks = growth_checks(&build, a.samples, a.seed, a.budget);
    let human = match &a.csv {
        Some(path) => {
            write(path, &checks.csv)?;
            checks.human
        }
        None => format!("{}{}", checks.csv, checks.human),
    };
    Ok(Outcome { ok: checks.ok, json: checks.json, human })
}

fn type_sequence(a: &GuessArgs) -> Result<TypeSequence, CliError> {
    let listed = a.types.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_type).collect::<Result<Vec<_>, _>>()?;
    if listed.is_empty() {
        return Err(CliError::Config("--types is empty".into()));
    }
    let len = a.repeat.unwrap_or(listed.len());
    Ok(TypeSequence::new(listed.iter().cycle().take(len).cloned().collect()))
}

fn guess_setup(a: &GuessArgs) -> Result<(LadderSystem, TypeSequence), CliError> {
    let u = universe(&a.universe)?;
    Ok((ladders(&u, &a.ladders, a.seed)?, type_sequence(a)?))
}

fn load_condition(path: &Path) -> Result<PosetCondition, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Config(format!("bad condition: {e}")))
}

fn color_table(path: &Option<PathBuf>) -> Result<ColorTable, CliError> {
    path.as_deref().map_or(Ok(ColorTable::constant(0)), ColorTable::load)
}

fn guess(op: &GuessOp) -> Result<Outcome, CliError> {
    match op {
        GuessOp::Check { common, f } => {
            let (ladders, types) = guess_setup(common)?;
            let table = color_table(f)?;
            let f = |x: &Ordinal| table.get(x) as usize;
            let found = check_guessing(&ladders, &types, &f).map_err(CliError::config)?;
            let verified = found.as_ref().map(|w| verify_witness(&ladders, &types, &f, w));
            let human = match &found {
                Some(w) => format!("guessed: {} < {} with f = {} realize {}\n", w.alpha, w.beta, w.k, w.realized),
                None => "no guessing pair\n".to_string(),
            };
            Ok(Outcome {
                json: json!({ "witness": found, "verified": verified }),
                human,
                ok: verified != Some(false),
            })
        }
        GuessOp::Strong { common, f, partners } => {
            let (ladders, types) = guess_setup(common)?;
            let table = color_table(f)?;
            let f = |x: &Ordinal| table.get(x) as usize;
            let found = check_strong_guessing(&ladders, &types, &f, *partners).map_err(CliError::config)?;
            let human = match &found {
                Some(w) => format!(
                    "{} (f = {}) is guessed by {}\n",
                    w.beta,
                    w.k,
                    w.witnesses.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                ),
                None => format!("no limit has {partners} guessing partners\n"),
            };
            Ok(Outcome { json: json!({ "witness": found }), human, ok: true })
        }
        GuessOp::Validate { common, condition } => {
            let (ladders, types) = guess_setup(common)?;
            let p = load_condition(condition)?;
            let report = validate_condition(&p, &ladders, &types).map_err(CliError::config)?;
            let mut human = if report.is_ok() { "valid\n".to_string() } else { String::new() };
            for v in &report.violations {
                writeln!(human, "clause {}: {}", v.clause, v.detail).unwrap();
            }
            Ok(Outcome {
                ok: report.is_ok(),
                json: json!({ "valid": report.is_ok(), "violations": report.violations }),
                human,
            })
        }
        GuessOp::Antibuild { common, start, out } => {
            let (ladders, types) = guess_setup(common)?;
            let start = match start {
                Some(path) => load_condition(path)?,
                None => PosetCondition::default(),
            };
            let p = antibuild(&start, &ladders, &types).map_err(CliError::config)?;
            let valid = validate_condition(&p, &ladders, &types).map_err(CliError::config)?.is_ok();
            let total = ladders.universe().limits().all(|a| p.f.contains_key(&a));
            let f = |x: &Ordinal| p.f.get(x).copied().unwrap_or(0);
            let guessed = if total { check_guessing(&ladders, &types, &f).map_err(CliError::config)? } else { None };
            let ok = valid && total && guessed.is_none();
            if let Some(out) = out {
                write(out, &pretty(&p))?;
            }
            let human = format!(
                "{} limits colored, valid: {valid}, guessing pair: {}\n",
                p.f.len(),
                guessed.as_ref().map_or("none".to_string(), |w| format!("{} < {}", w.alpha, w.beta))
            );
            Ok(Outcome {
                json: json!({ "condition": p, "valid": valid, "total": total, "witness": guessed, "passed": ok }),
                human,
                ok,
            })
        }
    }
}

fn export(a: &ExportArgs) -> Result<Outcome, CliError> {
    let doc = GraphDoc::from_json(&read(&a.graph)?)?;
    let text = doc.render(a.format);
    let human = match &a.out {
        Some(path) => {
            write(path, &text)?;
            format!("wrote {}\n", path.display())
        }
        None => text,
    };
    Ok(Outcome {
        json: json!({ "vertices": doc.vertices.len(), "edges": doc.edges.len(), "out": a.out }),
        human,
        ok: true,
    })
}
