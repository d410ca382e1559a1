use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use trimod_core::cliquer::{
    construct_coloring, divisibility_sequences, max_cliques_with, maximum_clique, sequence_is_clique, upper_bound,
    verify_clique, Clique, CliqueError, Coloring,
};
use trimod_core::cofactor::{parse_certificate, scalable_inverse_pair, verify_scalability, write_certificate};
use trimod_core::rns::{bench_roundtrip, build_system, check_moduli_record, parse_moduli_record, write_moduli_record, RnsError};
use trimod_core::trigraph::{
    build_graph, export_graph, graph_stats, parse_graph, ratio_decimal, write_graph, ExportFormat, TrinomialGraph,
};
use trimod_core::Execution;

use crate::cache::GraphCache;
use crate::{
    BenchArgs, CliqueArgs, Failure, Format, GraphArgs, ModuliArgs, SeqArgs, StatsArgs, VerifyArgs, DESK_LIMIT,
};

type Outcome = Result<(), Failure>;

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn check_n(n: usize) -> Outcome {
    if n < 2 {
        return Err(Failure::usage(format!("T(n) needs n >= 2, got {n}")));
    }
    Ok(())
}

/// Deadline for work up to `max_n`; refuses large inputs without a budget.
fn budget_for(max_n: usize, budget: Option<u64>) -> Result<Option<Instant>, Failure> {
    match budget {
        None if max_n > DESK_LIMIT => Err(Failure::usage(format!(
            "n = {max_n} is above {DESK_LIMIT}: building T(n) and searching it can take hours. \
             Pass --budget <SECONDS> to proceed"
        ))),
        None => Ok(None),
        Some(s) => Ok(Some(Instant::now() + Duration::from_secs(s))),
    }
}

fn parse_members(list: &str) -> Result<Vec<usize>, Failure> {
    list.split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::usage(format!("bad member {t:?}"))))
        .collect()
}

fn clique_usage(e: CliqueError) -> Failure {
    Failure::usage(e)
}

pub fn graph(cache: &GraphCache, a: GraphArgs) -> Outcome {
    check_n(a.n)?;
    budget_for(a.n, a.budget)?;
    let g = cache.graph(a.n)?;
    let text = match a.format {
        Format::Dot => export_graph(&g, ExportFormat::Dot),
        Format::EdgeList => export_graph(&g, ExportFormat::EdgeList),
        Format::AdjacencyCsv => export_graph(&g, ExportFormat::AdjacencyCsv),
        Format::Cache => write_graph(&g),
    };
    emit(a.out.as_deref(), &text)
}

fn search_all(g: &TrinomialGraph, deadline: Option<Instant>) -> Result<Vec<Clique>, Failure> {
    match max_cliques_with(g, deadline, Execution::Parallel) {
        Ok(m) => Ok(m.cliques),
        Err(CliqueError::BudgetExhausted { best }) => {
            if let Some(b) = best {
                eprintln!("largest clique seen (not proven maximum): {b}");
            }
            Err(Failure::verify(format!("budget exhausted while searching T({})", g.n())))
        }
        Err(e) => Err(Failure::usage(e)),
    }
}

fn search_one(g: &TrinomialGraph, deadline: Option<Instant>) -> Result<Clique, Failure> {
    match maximum_clique(g, deadline, Execution::Parallel) {
        Ok(c) => Ok(c),
        Err(CliqueError::BudgetExhausted { best }) => {
            if let Some(b) = best {
                eprintln!("largest clique seen (not proven maximum): {b}");
            }
            Err(Failure::verify(format!("budget exhausted while searching T({})", g.n())))
        }
        Err(e) => Err(Failure::usage(e)),
    }
}

fn check_bound(c: &Clique) -> Outcome {
    if c.size() > upper_bound(c.n()) {
        return Err(Failure::verify(format!(
            "clique of size {} in T({}) exceeds the bound {}",
            c.size(),
            c.n(),
            upper_bound(c.n())
        )));
    }
    Ok(())
}

pub fn clique(cache: &GraphCache, a: CliqueArgs) -> Outcome {
    if let Some(n) = a.n {
        check_n(n)?;
        let deadline = budget_for(n, a.budget)?;
        let g = cache.graph(n)?;
        let cliques = search_all(&g, deadline)?;
        let mut out = format!("n={n} omega={} count={}\n", cliques[0].size(), cliques.len());
        for c in &cliques {
            check_bound(c)?;
            let _ = writeln!(out, "{c}");
        }
        emit(None, &out)?;
        if let Some(path) = a.coloring_out {
            let coloring = construct_coloring(n).map_err(Failure::verify)?;
            emit(Some(&path), &coloring.to_string())?;
        }
        return Ok(());
    }

    let (lo, hi) = a.range.expect("clap requires --n or --range");
    if lo > hi {
        return Ok(());
    }
    check_n(lo)?;
    let deadline = budget_for(hi, a.budget)?;
    let mut reached = 1;
    for n in lo..=hi {
        let c = search_one(&cache.graph(n)?, deadline)?;
        check_bound(&c)?;
        if a.table {
            for k in reached + 1..=c.size() {
                let witness = Clique::new(n, c.members()[..k].to_vec()).map_err(clique_usage)?;
                let list: Vec<String> = witness.members().iter().map(|m| m.to_string()).collect();
                println!("k={k} a={n} members={}", list.join(","));
            }
        } else {
            println!("{c}");
        }
        reached = reached.max(c.size());
    }
    Ok(())
}

fn certificate_name(n: usize, k: usize, j: usize) -> String {
    format!("scalable_n{n}_k{k}_j{j}.txt")
}

pub fn moduli(a: ModuliArgs) -> Outcome {
    check_n(a.n)?;
    if a.c == 0 {
        return Err(Failure::usage("--c must be at least 1"));
    }
    let clique = Clique::new(a.n, parse_members(&a.members)?).map_err(clique_usage)?;
    let system = match build_system(&clique, a.c) {
        Ok(s) => s,
        Err(e @ (RnsError::UnverifiedClique | RnsError::NotCoprime(..) | RnsError::InverseFailure { .. })) => {
            return Err(Failure::verify(e));
        }
        Err(e) => return Err(Failure::usage(e)),
    };
    emit(a.out.as_deref(), &write_moduli_record(&system))?;

    if let Some(dir) = a.certificates {
        if a.c_max == 0 {
            return Err(Failure::usage("--c-max must be at least 1"));
        }
        fs::create_dir_all(&dir).map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
        let ks = clique.members();
        for (x, &k) in ks.iter().enumerate() {
            for &j in &ks[x + 1..] {
                let pair = scalable_inverse_pair(a.n, k, j).map_err(Failure::verify)?;
                let report = verify_scalability(&pair, 1..=a.c_max);
                let t = report.threshold().ok_or_else(|| {
                    Failure::verify(format!("pair k={k} j={j} does not scale by c = {}", a.c_max))
                })?;
                let path: PathBuf = dir.join(certificate_name(a.n, k, j));
                emit(Some(&path), &write_certificate(&pair, &(t..=a.c_max)))?;
            }
        }
    }
    Ok(())
}

/// Accepts `n=<n>,members=<list>` or a `n=<n> size=<s> members=<list>` record.
fn parse_clique_arg(s: &str) -> Result<Clique, Failure> {
    if let Some((n, members)) = s
        .strip_prefix("n=")
        .and_then(|rest| rest.split_once(",members="))
    {
        let n: usize = n.parse().map_err(|_| Failure::usage(format!("bad n {n:?}")))?;
        check_n(n)?;
        return Clique::new(n, parse_members(members)?).map_err(clique_usage);
    }
    s.parse().map_err(clique_usage)
}

pub fn verify(cache: &GraphCache, a: VerifyArgs) -> Outcome {
    if let Some(s) = a.clique {
        let c = parse_clique_arg(&s)?;
        return if verify_clique(c.n(), c.members()).map_err(clique_usage)? {
            println!("OK clique {c}");
            Ok(())
        } else {
            Err(Failure::verify(format!("{c} is not a clique")))
        };
    }
    if let Some(path) = a.scalable {
        let (pair, range) = parse_certificate(&read(&path)?).map_err(Failure::verify)?;
        let report = verify_scalability(&pair, range.clone());
        if !report.passed() {
            return Err(Failure::verify(format!(
                "certificate for n={} k={} j={} fails (first failing c: {:?})",
                pair.n,
                pair.k,
                pair.j,
                report.first_failure()
            )));
        }
        let fresh = scalable_inverse_pair(pair.n, pair.k, pair.j).map_err(Failure::verify)?;
        if fresh != pair {
            return Err(Failure::verify("certificate differs from the recomputed canonical pair"));
        }
        println!(
            "OK scalable n={} k={} j={} c={}..{}",
            pair.n,
            pair.k,
            pair.j,
            range.start(),
            range.end()
        );
        return Ok(());
    }
    if let Some(path) = a.moduli {
        let rec = parse_moduli_record(&read(&path)?).map_err(Failure::verify)?;
        check_moduli_record(&rec).map_err(Failure::verify)?;
        println!("OK moduli n={} c={} count={}", rec.n, rec.c, rec.members.len());
        return Ok(());
    }
    if let Some(path) = a.graph {
        let g = parse_graph(&read(&path)?).map_err(Failure::verify)?;
        budget_for(g.n(), a.budget)?;
        if build_graph(g.n()).map_err(Failure::verify)? != g {
            return Err(Failure::verify(format!("edges differ from a fresh build of T({})", g.n())));
        }
        println!("OK graph n={} edges={}", g.n(), g.edge_count());
        return Ok(());
    }
    let path = a.coloring.expect("clap requires one verification kind");
    let coloring: Coloring = read(&path)?.parse().map_err(Failure::verify)?;
    let n = coloring.n();
    budget_for(n, a.budget)?;
    if let Some((i, j)) = coloring.conflict(&cache.graph(n)?) {
        return Err(Failure::verify(format!("edge {{{i}, {j}}} is monochromatic")));
    }
    let bound = upper_bound(n);
    if coloring.num_colors() > bound {
        return Err(Failure::verify(format!(
            "{} colors exceed the bound {bound}",
            coloring.num_colors()
        )));
    }
    println!("OK coloring n={n} colors={} bound={bound}", coloring.num_colors());
    Ok(())
}

pub fn stats(cache: &GraphCache, a: StatsArgs) -> Outcome {
    let (lo, hi) = a.range;
    let mut csv = String::from("n,edge_density,coprime_density\n");
    let mut violation = None;
    if lo <= hi {
        check_n(lo)?;
        budget_for(hi, a.budget)?;
        for n in lo..=hi {
            let s = graph_stats(&cache.graph(n)?);
            if s.edge_density > s.coprime_density {
                violation.get_or_insert(n);
            }
            let _ = writeln!(
                csv,
                "{n},{},{}",
                ratio_decimal(&s.edge_density, a.places),
                ratio_decimal(&s.coprime_density, a.places)
            );
        }
    }
    emit(a.out.as_deref(), &csv)?;
    match violation {
        Some(n) => Err(Failure::verify(format!("edge density exceeds coprime density at n = {n}"))),
        None => Ok(()),
    }
}

pub fn seq(a: SeqArgs) -> Outcome {
    for s in divisibility_sequences().take(a.count) {
        let n = s.max() + 1u32;
        if !sequence_is_clique(s.members(), &n).map_err(Failure::verify)? {
            return Err(Failure::verify(format!("{s} fails the divisibility check")));
        }
        let small = s
            .to_usizes()
            .zip(usize::try_from(&n).ok())
            .filter(|&(_, n)| n <= a.resultant_limit);
        let resultants = match small {
            Some((ks, n)) if verify_clique(n, &ks).map_err(clique_usage)? => "ok",
            Some(_) => return Err(Failure::verify(format!("{s} is not a clique in T({n})"))),
            None => "skipped",
        };
        println!("size={} n={n} members={s} divisibility=ok resultants={resultants}", s.len());
    }
    Ok(())
}

pub fn bench(cache: &GraphCache, a: BenchArgs) -> Outcome {
    check_n(a.n)?;
    if a.c == 0 {
        return Err(Failure::usage("--c must be at least 1"));
    }
    let exec = if a.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let clique = match &a.members {
        Some(list) => Clique::new(a.n, parse_members(list)?).map_err(clique_usage)?,
        None => {
            budget_for(a.n, None)?;
            search_one(&cache.graph(a.n)?, None)?
        }
    };
    let system = build_system(&clique, a.c).map_err(Failure::verify)?;
    let cap_bits = system.capacity().bits();
    let bits = a.bits.map_or(cap_bits, |b| b.min(cap_bits));
    println!("clique={clique}");
    print!("{}", bench_roundtrip(&system, a.values, bits, a.seed, exec));
    Ok(())
}
