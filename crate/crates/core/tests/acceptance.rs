//! Acceptance gate. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.
//!
//! The full `a(10)` scan (about twenty minutes on one core) runs only with
//! `TRIMOD_FULL_SCAN=1`; otherwise the stored size-10 witness is verified.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{One, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trimod_core::cliquer::{
    a_of_k_scan, clique_number, construct_coloring, divisibility_sequences, maximum_clique, sequence_is_clique,
    upper_bound, verify_clique,
};
use trimod_core::cofactor::{dyadic_cofactor_check, CofactorError, reduced_resultant, scalable_inverse_pair, verify_scalability};
use trimod_core::resolve::swan_binomial_resultant;
use trimod_core::rns::{build_system, residue_op, ResidueOp};
use trimod_core::trigraph::{build_graph, graph_stats, ratio_decimal, structural_edge_check};
use trimod_core::{dyadically_resolve, resultant, trinomial_resultant, Execution, IntPoly, Trinomial};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn poly(terms: &[(usize, i64)]) -> IntPoly {
    IntPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
}

fn tri(n: usize, k: usize) -> Trinomial {
    Trinomial::new(n, k).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const A_OF_K: [(usize, usize); 8] = [(2, 3), (3, 5), (4, 5), (5, 10), (6, 11), (7, 22), (8, 41), (9, 82)];
const A10_WITNESS: [usize; 10] = [228, 240, 260, 264, 268, 273, 276, 288, 324, 834];

fn record_table() -> Check {
    let table = a_of_k_scan(9, 82);
    for (entry, &(k, n)) in table.iter().zip(&A_OF_K) {
        ensure(entry.k == k && entry.n() == Some(n), || format!("a({k}): got {:?}, want {n}", entry.n()))?;
        let w = entry.first.as_ref().unwrap();
        ensure(verify_clique(n, w.members()).unwrap(), || format!("witness for a({k}) fails"))?;
    }
    ensure(table.len() == A_OF_K.len(), || "table length".into())?;

    let a10 = if std::env::var("TRIMOD_FULL_SCAN").is_ok_and(|v| v == "1") {
        let full = a_of_k_scan(10, 1668);
        ensure(full.last().and_then(|e| e.n()) == Some(1668), || "full scan: a(10) != 1668".into())?;
        "a(10)=1668 by full scan"
    } else {
        ensure(verify_clique(1668, &A10_WITNESS).unwrap(), || "stored a(10) witness fails".into())?;
        "a(10) witness verified at n=1668 (full scan skipped)"
    };
    Ok(format!("a(2..9) = 3,5,5,10,11,22,41,82; {a10}"))
}

fn pair_20_12_4() -> Check {
    let p = scalable_inverse_pair(20, 12, 4).map_err(|e| e.to_string())?;
    let a = poly(&[(8, 1), (0, 1)]).to_rational();
    let b = poly(&[(20, 1), (12, -1), (8, -1), (0, 1)]).to_rational();
    ensure(p.a == a && p.b == b, || format!("got a={:?} b={:?}", p.a, p.b))?;
    let r = verify_scalability(&p, 1..=8);
    ensure(r.passed(), || format!("scalability fails: {r:?}"))?;
    Ok("x^8+1 and x^20-x^12-x^8+1, inverses hold for c=1..8".into())
}

fn reduced_resultant_example() -> Check {
    let f = poly(&[(2, 1), (0, -1)]);
    let g = poly(&[(2, 1), (0, 3)]);
    let res = resultant(&f, &g).map_err(|e| e.to_string())?;
    let red = reduced_resultant(&f, &g).map_err(|e| e.to_string())?;
    ensure(*res.value() == BigInt::from(16), || format!("resultant {}", res.value()))?;
    ensure(red == BigInt::from(4), || format!("reduced resultant {red}"))?;
    Ok("res=16, reduced=4".into())
}

fn clique_bound() -> Check {
    for n in 2..=300 {
        let g = build_graph(n).unwrap();
        let omega = clique_number(&g);
        let bound = upper_bound(n);
        ensure(omega <= bound, || format!("n={n}: omega {omega} > bound {bound}"))?;
        let c = construct_coloring(n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(c.num_colors() <= bound, || format!("n={n}: {} colors", c.num_colors()))?;
        ensure(c.conflict(&g).is_none(), || format!("n={n}: improper coloring"))?;
    }
    Ok("omega <= 2 floor(log2 n) - nu2(n) and proper colorings within the bound, n=2..300".into())
}

fn sequences() -> Check {
    let expected: [&[u64]; 5] = [
        &[1, 2],
        &[2, 3, 4],
        &[12, 15, 16, 18],
        &[720, 760, 765, 768, 780],
        &[48372480, 48434496, 48435465, 48435712, 48436128, 48439664],
    ];
    let seqs: Vec<_> = divisibility_sequences().skip(1).take(5).collect();
    for (s, want) in seqs.iter().zip(expected) {
        let want: Vec<BigUint> = want.iter().map(|&v| BigUint::from(v)).collect();
        ensure(s.members() == want.as_slice(), || format!("got {s}"))?;
    }
    for s in &seqs[..4] {
        let ks = s.to_usizes().unwrap();
        let n = ks.last().unwrap() + 1;
        ensure(verify_clique(n, &ks).unwrap(), || format!("{s} not a clique in T({n})"))?;
    }
    let last = &seqs[4];
    let n = last.max() + 1u32;
    ensure(sequence_is_clique(last.members(), &n).unwrap(), || "divisibility check".into())?;
    Ok("five sequences exact; four by resultants, T(48439665) by divisibility".into())
}

fn structure() -> Check {
    for n in 2..=200 {
        let v = structural_edge_check(&build_graph(n).unwrap());
        ensure(v.is_empty(), || format!("n={n}: {v:?}"))?;
    }
    Ok("cardioid, consecutive, circle, reflection: 0 violations, n=2..200".into())
}

fn oracles() -> Check {
    let mut pairs = 0;
    for n in 3..=40 {
        for k in 2..n {
            for j in 1..k {
                let fast = trinomial_resultant(tri(n, k), tri(n, j)).unwrap();
                let slow = resultant(&tri(n, k).to_poly(), &tri(n, j).to_poly()).unwrap();
                ensure(fast.value().abs() == slow.value().abs(), || format!("n={n} k={k} j={j}"))?;
                pairs += 1;
            }
        }
    }
    for n in 1..=30 {
        for j in 0..=4u32 {
            let f = poly(&[(n, 1), (0, 2)]);
            let g = poly(&[(1 << j, 1), (0, 1)]);
            let generic = resultant(&f, &g).unwrap().magnitude();
            ensure(swan_binomial_resultant(n, j).unwrap() == generic, || format!("swan n={n} j={j}"))?;
        }
    }
    Ok(format!("{pairs} trinomial pairs (n<=40) and 150 binomial cases (n<=30, j<=4) agree"))
}

fn scalable_iff_dyadic() -> Check {
    let (mut checked, mut common) = (0, 0);
    for n in 3..=60 {
        for k in 2..n {
            for j in 1..k {
                let (f, g) = (tri(n, k).to_poly(), tri(n, j).to_poly());
                // shared factor: no cofactors exist and the resultant is 0
                let cofactor = match dyadic_cofactor_check(&f, &g) {
                    Ok(v) => v,
                    Err(CofactorError::CommonFactor(_)) => {
                        common += 1;
                        false
                    }
                    Err(e) => return Err(format!("n={n} k={k} j={j}: {e}")),
                };
                let dyadic = dyadically_resolve(tri(n, k), tri(n, j)).unwrap().resolves;
                ensure(cofactor == dyadic, || format!("n={n} k={k} j={j}: {cofactor} vs {dyadic}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs, n<=60 ({common} with a common factor)"))
}

fn rns() -> Check {
    let g = build_graph(10).unwrap();
    let clique = maximum_clique(&g, None, Execution::default()).map_err(|e| e.to_string())?;
    ensure(clique.size() == 5, || format!("omega(T(10)) = {}", clique.size()))?;
    let s = build_system(&clique, 8).map_err(|e| e.to_string())?;
    let cap = s.capacity().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let x = rng.gen_biguint_below(&cap);
        let back = s.reduce(&BigInt::from(x.clone())).unwrap().reconstruct();
        ensure(back == x, || format!("roundtrip of {x}"))?;
    }
    for _ in 0..1000 {
        let (x, y) = (rng.gen_biguint_below(&cap), rng.gen_biguint_below(&cap));
        let (u, v) = (s.reduce_uint(&x, Execution::Sequential), s.reduce_uint(&y, Execution::Sequential));
        let want = [
            (ResidueOp::Add, (&x + &y) % &cap),
            (ResidueOp::Sub, (&x + &cap - &y) % &cap),
            (ResidueOp::Mul, (&x * &y) % &cap),
        ];
        for (op, w) in want {
            let got = residue_op(&u, &v, op).unwrap().reconstruct();
            ensure(got == w, || format!("{op:?} on {x}, {y}"))?;
        }
    }
    ensure(!cap.is_one(), || "trivial capacity".into())?;
    Ok(format!("{clique} c=8: 1000 roundtrips, 1000 add/sub/mul pairs"))
}

fn density() -> Check {
    let s = graph_stats(&build_graph(200).unwrap());
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("density_200.csv");
    let (e, c) = (ratio_decimal(&s.edge_density, 6), ratio_decimal(&s.coprime_density, 6));
    fs::write(&path, format!("n,edge_density,coprime_density\n200,{e},{c}\n")).map_err(|e| e.to_string())?;
    ensure(s.edge_density < s.coprime_density, || format!("edge {e} >= coprime {c}"))?;
    Ok(format!("edge {e} < coprime {c}; written to {}", path.display()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("a(k) table", record_table),
        ("inverse pair (20,12,4)", pair_20_12_4),
        ("reduced resultant", reduced_resultant_example),
        ("clique bound and coloring", clique_bound),
        ("divisibility sequences", sequences),
        ("structural families", structure),
        ("oracle equivalence", oracles),
        ("scalable iff dyadic", scalable_iff_dyadic),
        ("rns correctness", rns),
        ("density", density),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_millis();
        match outcome {
            Ok(m) => println!("criterion {:>2} PASS {name}: {m} [{secs} ms]", i + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {m} [{secs} ms]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
