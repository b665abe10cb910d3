//! One function per subcommand. Each reads its inputs, calls into the
//! library, and lays the result out as an ordered field list; nothing here
//! prints or exits. Field values are exact rationals rendered in lowest
//! terms, integers, `true`/`false`, or `;`-joined lists — commas never
//! appear inside a value, so the CSV rendering needs no quoting in
//! practice.

use std::collections::BTreeSet;

use apsum_core::arrangement::{
    build_ap_arrangement, build_sum_arrangement, enumerate_triangles, lines_graph, pipeline_k3,
    refine_graph, right_angle_counts, triangles_to_aps, Orientation, RefineStrategy,
};
use apsum_core::exact::{
    count_k_aps, difference_set_along_graph, format_rat, full_sumset, iterated_sumset, rat, ratio,
    sumset_along_graph, ApWitness, NumberSet,
};
use apsum_core::harness::{generate, pluennecke_battery, GraphSpec, InstanceSpec, SetSpec};
use apsum_core::pattern::{
    cartesian_power, covering_scaling_report, enumerate_homothetic_copies, facet_normals,
    facet_shift_check, general_pipeline, grid_pattern, match_pattern_in_pointset, popular_holders,
    simplex_vertices, IntVector, Pattern, PipelineConfig,
};
use apsum_core::pluennecke::{cover_count, direct_mode_gate, pluennecke_check};

use crate::io::{
    read_set, resolve_graph, usage, write_graph, write_set, CliError,
};
use crate::report::Report;
use crate::{
    ApsArgs, Command, CopiesArgs, CoverArgs, DiffsetArgs, GenArgs, GraphKind, PatternArgs,
    Pipeline3Args, PipelinedArgs, PluenneckeArgs, RefineArgs, ScalingArgs, SetKind, Shape,
    SumsetArgs, TrianglesArgs,
};

pub fn dispatch(command: &Command, max_cells: u64) -> Result<Report, CliError> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Sumset(args) => sumset(args),
        Command::Diffset(args) => diffset(args),
        Command::Aps(args) => aps(args),
        Command::Refine(args) => refine(args),
        Command::Triangles(args) => triangles(args),
        Command::Pipeline3(args) => pipeline3(args),
        Command::Pattern(args) => pattern(args),
        Command::Copies(args) => copies(args, max_cells),
        Command::Pipelined(args) => pipelined(args),
        Command::Pluennecke(args) => pluennecke(args),
        Command::Cover(args) => cover(args),
        Command::Scaling(args) => scaling(args, max_cells),
    }
}

fn require<T: Clone>(value: &Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| usage(format!("{kind} requires {flag}")))
}

fn gen(args: &GenArgs) -> Result<Report, CliError> {
    let set = match args.set_kind {
        SetKind::Ap => SetSpec::Ap {
            start: require(&args.start, "--start", "an ap set")?,
            step: require(&args.step, "--step", "an ap set")?,
            length: require(&args.len, "--len", "an ap set")?,
        },
        SetKind::Gap => SetSpec::Gap {
            start: args.start.clone().unwrap_or_else(|| rat(0)),
            steps: require(&args.steps, "--steps", "a gap set")?,
            dims: require(&args.dims, "--dims", "a gap set")?,
        },
        SetKind::Random => SetSpec::RandomSubset {
            max: require(&args.max, "--max", "a random set")?,
            size: require(&args.size, "--size", "a random set")?,
        },
        SetKind::Explicit => SetSpec::Explicit {
            values: require(&args.values, "--values", "an explicit set")?,
        },
    };
    let graph = match args.graph_kind {
        GraphKind::Complete => GraphSpec::Complete,
        GraphKind::CompleteLoops => GraphSpec::CompleteWithLoops,
        GraphKind::Random => GraphSpec::Random {
            probability: require(&args.p, "--p", "a random graph")?,
        },
        GraphKind::SumRestricted => GraphSpec::SumRestricted {
            kept_sums: require(&args.kept_sums, "--kept-sums", "a sum-restricted graph")?,
        },
    };
    let spec = InstanceSpec {
        set,
        graph,
        seed: args.seed,
    };
    let (a, g) = generate(&spec)?;
    write_set(&args.out_set, &a)?;
    if let Some(path) = &args.out_graph {
        write_graph(path, &g)?;
    }

    let slots = g.edge_count() + g.loop_count();
    let mut r = Report::new();
    r.push_display("seed", args.seed);
    r.push_display("set_size", a.len());
    r.push_display("edges", g.edge_count());
    r.push_display("loops", g.loop_count());
    r.push_display("slots", slots);
    if slots > 0 {
        let s = sumset_along_graph(&a, &g)?;
        r.push_display("sumset_size", s.len());
        r.push_rat("growth", &ratio(s.len() as i64, a.len() as i64));
    } else {
        r.push_display("sumset_size", 0);
        r.push("growth", "none");
    }
    Ok(r)
}

fn sumset(args: &SumsetArgs) -> Result<Report, CliError> {
    let a = read_set(&args.set)?;
    let mut r = Report::new();
    r.push_display("set_size", a.len());
    let result = if let Some(spec) = &args.graph {
        let g = resolve_graph(spec, &a)?;
        r.push("mode", "graph");
        sumset_along_graph(&a, &g)?
    } else if args.k.is_some() || args.l.is_some() {
        let k = args.k.unwrap_or(0);
        let l = args.l.unwrap_or(0);
        r.push("mode", "iterated");
        r.push_display("k", k);
        r.push_display("l", l);
        iterated_sumset(&a, k, l)
    } else {
        let b = match &args.b {
            Some(path) => read_set(path)?,
            None => a.clone(),
        };
        r.push("mode", "full");
        full_sumset(&a, &b)
    };
    push_result_set(&mut r, &a, &result, args.elements);
    Ok(r)
}

fn diffset(args: &DiffsetArgs) -> Result<Report, CliError> {
    let a = read_set(&args.set)?;
    let mut r = Report::new();
    r.push_display("set_size", a.len());
    let result = if let Some(spec) = &args.graph {
        let g = resolve_graph(spec, &a)?;
        r.push("mode", "graph");
        difference_set_along_graph(&a, &g)?
    } else {
        let b = match &args.b {
            Some(path) => read_set(path)?,
            None => a.clone(),
        };
        r.push("mode", "full");
        full_sumset(&a, &b.scale(&rat(-1)))
    };
    push_result_set(&mut r, &a, &result, args.elements);
    Ok(r)
}

fn push_result_set(r: &mut Report, a: &NumberSet, result: &NumberSet, elements: bool) {
    r.push_display("size", result.len());
    if a.is_empty() {
        r.push("growth", "none");
    } else {
        r.push_rat("growth", &ratio(result.len() as i64, a.len() as i64));
    }
    if elements {
        r.push("elements", Report::joined(result.iter().map(format_rat)));
    }
}

fn aps(args: &ApsArgs) -> Result<Report, CliError> {
    if args.k < 3 {
        return Err(usage("--k must be at least 3"));
    }
    let a = read_set(&args.set)?;
    let (count, witnesses) = count_k_aps(&a, args.k);
    let mut r = Report::new();
    r.push_display("set_size", a.len());
    r.push_display("k", args.k);
    r.push_display("count", count);
    if args.witnesses {
        for (i, w) in witnesses.iter().enumerate() {
            r.push(format!("ap.{i}"), terms_cell(w));
        }
    }
    Ok(r)
}

fn refine(args: &RefineArgs) -> Result<Report, CliError> {
    let a = read_set(&args.set)?;
    let g = resolve_graph(&args.graph, &a)?;
    let strategy = match &args.alpha {
        Some(alpha) => RefineStrategy::FixedAlpha(alpha.clone()),
        None => RefineStrategy::Auto,
    };
    let (_, rep) = refine_graph(&a, &g, &args.epsilon, &strategy)?;
    let mut r = Report::new();
    r.push_display("set_size", a.len());
    r.push_rat("epsilon", &rep.epsilon);
    r.push_rat("alpha_used", &rep.alpha_used);
    r.push_display("edges_before", rep.edges_before);
    r.push_display("edges_after", rep.edges_after);
    r.push_display("popular_differences", rep.popular_difference_count);
    r.push_rat("d_achieved", &rep.d_achieved);
    r.push_display("retention_met", rep.retention_met);
    Ok(r)
}

fn triangles(args: &TrianglesArgs) -> Result<Report, CliError> {
    let a = read_set(&args.set)?;
    let g = resolve_graph(&args.graph, &a)?;
    let diffs = difference_set_along_graph(&a, &g)?;
    let sums = sumset_along_graph(&a, &g)?;
    let arr = build_ap_arrangement(&a, &g, &diffs, &sums)?;
    let ts = enumerate_triangles(&arr)?;
    let distinct = triangles_to_aps(&ts);
    let graph_triangles = lines_graph(&arr).count_triangles();
    // Right angles live on the sum arrangement, whose vertical and
    // horizontal families supply the two legs.
    let sum_arr = build_sum_arrangement(&a, &g)?;
    let right_angles: u64 = right_angle_counts(&sum_arr)?.values().sum();

    let mut r = Report::new();
    r.push_display("set_size", a.len());
    r.push_display("points", arr.point_count());
    r.push_display("proper_triangles", ts.len());
    r.push_display("graph_triangles", graph_triangles);
    r.push_display("distinct_aps", distinct.len());
    r.push_display("right_angles", right_angles);
    if args.witnesses {
        for (i, t) in ts.iter().enumerate() {
            let orientation = match t.orientation {
                Orientation::Up => "up",
                Orientation::Down => "down",
            };
            let cell = Report::joined([
                format_rat(&t.base_left.x),
                format_rat(&t.base_left.y),
                format_rat(&t.base_right.x),
                format_rat(&t.base_right.y),
                format_rat(&t.apex.x),
                format_rat(&t.apex.y),
                orientation.to_string(),
            ]);
            r.push(format!("triangle.{i}"), cell);
        }
    }
    Ok(r)
}

fn pipeline3(args: &Pipeline3Args) -> Result<Report, CliError> {
    let a = read_set(&args.set)?;
    let g = resolve_graph(&args.graph, &a)?;
    let rep = pipeline_k3(&a, &g, &args.epsilon)?;
    let mut r = Report::new();
    r.push_display("set_size", a.len());
    r.push_rat("epsilon", &rep.epsilon);
    match &rep.refinement {
        Some(refinement) => {
            r.push_rat("refine.alpha_used", &refinement.alpha_used);
            r.push_display("refine.edges_before", refinement.edges_before);
            r.push_display("refine.edges_after", refinement.edges_after);
            r.push_rat("refine.d_achieved", &refinement.d_achieved);
            r.push_display("refine.retention_met", refinement.retention_met);
        }
        None => {
            for field in [
                "refine.alpha_used",
                "refine.edges_before",
                "refine.edges_after",
                "refine.d_achieved",
                "refine.retention_met",
            ] {
                r.push(field, "none");
            }
        }
    }
    r.push_display("points", rep.point_count);
    r.push_display("lines", rep.line_count);
    r.push_display("triangles", rep.triangle_count);
    r.push_display("distinct", rep.distinct_ap_count());
    if args.witnesses {
        for (i, m) in rep.aps.iter().enumerate() {
            r.push(format!("ap.{i}"), terms_cell(&m.ap));
            r.push_display(format!("mult.{i}"), m.multiplicity);
        }
    }
    Ok(r)
}

fn pattern(args: &PatternArgs) -> Result<Report, CliError> {
    let (pat, d) = build_shape(args.shape, args.dim)?;
    let mut r = Report::new();
    r.push("pattern", pat.name());
    r.push_display("dim", d);
    r.push_display("point_count", pat.len());
    for (i, v) in pat.points().iter().enumerate() {
        r.push(format!("vertex.{i}"), ivec_cell(v));
    }
    if matches!(args.shape, Shape::Simplex) {
        for (i, normal) in facet_normals(d)?.iter().enumerate() {
            r.push(format!("facet.{i}"), ivec_cell(normal));
        }
        // Errors if any facet lacks a parallel section through the grid.
        facet_shift_check(d)?;
        r.push("shift_check", "ok");
    }
    Ok(r)
}

fn copies(args: &CopiesArgs, max_cells: u64) -> Result<Report, CliError> {
    let a = read_set(&args.set)?;
    let (pat, d) = build_shape(args.shape, args.dim)?;
    let found = enumerate_homothetic_copies(&pat, &a, args.policy)?;
    let ratios: BTreeSet<_> = found.iter().map(|c| &c.ratio).collect();
    let holders: BTreeSet<_> = found.iter().map(|c| &c.holder).collect();

    let mut r = Report::new();
    r.push_display("set_size", a.len());
    r.push("pattern", pat.name());
    r.push("policy", args.policy.name());
    r.push_display("dim", d);
    r.push_display("count", found.len());
    r.push_display("distinct_ratios", ratios.len());
    r.push_display("distinct_holders", holders.len());
    if let Some(threshold) = args.threshold {
        r.push_display("threshold", threshold);
        r.push_display("popular", popular_holders(&found, threshold).len());
    }
    if args.check {
        let host = cartesian_power(&a, d, max_cells)?;
        let matched = match_pattern_in_pointset(&pat, &host, args.policy)?;
        if matched != found {
            return Err(CliError::Domain(apsum_core::Error::Internal(
                "matcher disagreed with the factorized enumeration".to_string(),
            )));
        }
        r.push_display("matcher", matched.len());
    }
    if args.witnesses {
        for (i, c) in found.iter().enumerate() {
            let mut cell = vec![format_rat(&c.ratio)];
            cell.extend(c.holder.coords().iter().map(format_rat));
            r.push(format!("copy.{i}"), Report::joined(cell));
        }
    }
    Ok(r)
}

fn pipelined(args: &PipelinedArgs) -> Result<Report, CliError> {
    let a = read_set(&args.set)?;
    let config = PipelineConfig {
        grid_policy: args.grid_policy,
        simplex_policy: args.simplex_policy,
        holder_rule: args.holders.clone(),
        richness_rule: args.rich.clone(),
    };
    let rep = general_pipeline(&a, args.dim, &config)?;
    let mut r = Report::new();
    r.push_display("set_size", rep.set_size);
    r.push_display("dim", rep.dimension);
    r.push("grid_policy", args.grid_policy.name());
    r.push("simplex_policy", args.simplex_policy.name());
    r.push_display("grid_copies", rep.grid_copy_count);
    r.push_rat("copy_density", &rep.copy_density);
    r.push_display("distinct_holders", rep.distinct_holder_count);
    r.push_display("holder_cutoff", rep.holder_cutoff);
    r.push_display("popular_holders", rep.popular_holder_count);
    r.push_display("richness_cutoff", rep.richness_cutoff);
    r.push("rich_classes", Report::joined(rep.rich_class_counts.iter()));
    r.push_display("kept_points", rep.kept_point_count);
    r.push_display("simplices", rep.simplex_count);
    r.push_display("witnesses", rep.projection.witness_count);
    r.push_display("positive_witnesses", rep.projection.positive_witness_count);
    r.push_display("multiplicity_bound", &rep.projection.multiplicity_bound);
    r.push_display("distinct", rep.projection.distinct.len());
    r.push("empty_at", rep.empty_at.unwrap_or("none"));
    if args.witnesses {
        for (i, m) in rep.projection.distinct.iter().enumerate() {
            r.push(format!("ap.{i}"), terms_cell(&m.ap));
            r.push_display(format!("mult.{i}"), m.multiplicity);
        }
    }
    Ok(r)
}

fn pluennecke(args: &PluenneckeArgs) -> Result<Report, CliError> {
    let mut r = Report::new();
    if let Some(instances) = args.battery {
        let rep = pluennecke_battery(instances, args.seed)?;
        r.push_display("seed", rep.seed);
        r.push_display("instances", rep.instances);
        r.push_display("violations", rep.violations);
        r.push_rat("worst_ratio", &rep.worst_ratio);
        r.push_display("holds", rep.violations == 0);
        return Ok(r);
    }
    if args.k + args.l == 0 {
        return Err(usage("--k plus --l must be at least 1"));
    }
    let a_path = args
        .a
        .as_ref()
        .ok_or_else(|| usage("pass --a, or --battery for the random battery"))?;
    let a = read_set(a_path)?;
    let b = match &args.b {
        Some(path) => read_set(path)?,
        None => a.clone(),
    };
    let rep = pluennecke_check(&a, &b, args.k, args.l)?;
    r.push_display("n", rep.base_size);
    r.push_rat("delta", &rep.delta);
    r.push_display("k", rep.k);
    r.push_display("l", rep.l);
    r.push_display("lhs", rep.lhs);
    r.push_rat("rhs_bound", &rep.rhs_bound);
    r.push_display("holds", rep.holds);
    Ok(r)
}

fn cover(args: &CoverArgs) -> Result<Report, CliError> {
    let a = read_set(&args.set)?;
    let mut r = Report::new();
    r.push_display("set_size", a.len());
    match (&args.normal, args.dim, &args.cap) {
        (Some(coords), None, None) => {
            let normal = IntVector::from_i64(coords)?;
            let res = cover_count(&a, &normal)?;
            r.push("normal", ivec_cell(&res.coefficients));
            r.push_display("distinct_offsets", res.distinct_offsets);
        }
        (None, Some(dim), Some(cap)) => {
            let gate = direct_mode_gate(&a, dim, cap)?;
            r.push_display("dim", gate.dimension);
            r.push_rat("doubling", &gate.doubling);
            r.push_rat("cap", &gate.cap);
            r.push_display("allowed", gate.allowed);
            for (i, c) in gate.facet_counts.iter().enumerate() {
                r.push(format!("facet.{i}"), ivec_cell(&c.coefficients));
                r.push_display(format!("count.{i}"), c.distinct_offsets);
            }
        }
        _ => {
            return Err(usage(
                "pass --normal for one cover count, or --dim with --cap for the gate",
            ))
        }
    }
    Ok(r)
}

fn scaling(args: &ScalingArgs, max_cells: u64) -> Result<Report, CliError> {
    let (pat, d) = build_shape(args.shape, args.dim)?;
    let mut hosts = Vec::with_capacity(args.sizes.len());
    for &size in &args.sizes {
        if size == 0 {
            return Err(usage("--sizes entries must be positive"));
        }
        let base = NumberSet::from_values((0..size).map(|v| rat(v as i64)));
        hosts.push(cartesian_power(&base, d, max_cells)?);
    }
    let rep = covering_scaling_report(&pat, &hosts, args.policy)?;
    let mut r = Report::new();
    r.push("pattern", rep.pattern);
    r.push("policy", rep.policy.name());
    r.push("base_sizes", Report::joined(args.sizes.iter()));
    r.push("host_sizes", Report::joined(rep.sizes.iter()));
    r.push("counts", Report::joined(rep.counts.iter()));
    match rep.slope {
        Some(slope) => r.push_f64("slope", slope),
        None => r.push("slope", "none"),
    }
    r.push_f64("ceiling", rep.ceiling);
    Ok(r)
}

/// Materializes one of the named pattern shapes together with its ambient
/// dimension. The segment is the fixed two-point pattern `{0, 1}` on the
/// line; simplex and grid take their dimension from `--dim`.
fn build_shape(shape: Shape, dim: Option<usize>) -> Result<(Pattern, usize), CliError> {
    match shape {
        Shape::Segment => {
            if let Some(d) = dim {
                if d != 1 {
                    return Err(usage("the segment pattern is 1-dimensional"));
                }
            }
            let points = vec![
                IntVector::from_i64(&[0])?,
                IntVector::from_i64(&[1])?,
            ];
            Ok((Pattern::new("segment", points)?, 1))
        }
        Shape::Simplex => {
            let d = dim.ok_or_else(|| usage("the simplex pattern requires --dim"))?;
            Ok((simplex_vertices(d)?, d))
        }
        Shape::Grid => {
            let d = dim.ok_or_else(|| usage("the grid pattern requires --dim"))?;
            Ok((grid_pattern(d)?, d))
        }
    }
}

fn terms_cell(w: &ApWitness) -> String {
    Report::joined(w.terms().iter().map(format_rat))
}

fn ivec_cell(v: &IntVector) -> String {
    Report::joined(v.coords().iter())
}
