//! Command-line surface: deterministic JSON on stdout, diagnostics on stderr,
//! DOT with --dot. Exit codes: 0 success, 1 verification failure, 2 usage or
//! parameter errors.

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use tubehall::atlas::{
    ar_shape, derive_params, equivalent, lambda_tilde, lambda_tilde_prime, FieldChoice,
    GradedPresentation, Scalar,
};
use tubehall::covering::{check_diagrams, cover_map, CoverContext, VertexQ};
use tubehall::lie::{
    closed_pair, closed_z_u, heisenberg_check, lift_integral, primes_for_magnitude,
    quotient_by_center, verify_constants, BasisSym, HallEngine, LieElement,
};
use tubehall::orbit::{OrbitCategory, Variant};
use tubehall::Error;

#[derive(Parser)]
#[command(
    name = "tubehall",
    about = "Exact Hall-algebra and classification workbench for 2-periodic tube orbit categories",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hall number F^L_{YX} with its S1/S2/S3 orbit split.
    Hall {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Bracket [u_x, u_y] as residues mod q-1.
    Bracket {
        #[arg(long)]
        variant: String,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Brute-force brackets against the closed-form constants; exit 1 on mismatch.
    VerifyConstants {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        max: i64,
    },
    /// Structure constants of the quotient of the even-case algebra by its center.
    Quotient {
        #[arg(long)]
        max: i64,
        /// Odd primes for a CRT-lifted input table; defaults to the verified
        /// closed-form integral constants.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// Chevalley-basis check of the Heisenberg relations in the root category.
    Heisenberg {
        #[arg(long)]
        max: i64,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// Derived classification parameters and the equivalence criterion.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// "q" for the rationals or pP for the prime field F_P (e.g. p5).
        #[arg(long)]
        field: String,
    },
    /// Shape of the Auslander-Reiten quiver of the orbit category.
    ArQuiver {
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 4)]
        height: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Covering-quiver diagram checks; exit 1 on violations.
    Cover {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 50)]
        window: i64,
        #[arg(long)]
        dot: bool,
    },
}

fn lie_to_json(e: &LieElement) -> Value {
    let mut u = Map::new();
    let mut z = 0i64;
    for (sym, c) in e.terms() {
        match sym {
            BasisSym::Z => z = c,
            BasisSym::U(m) => {
                u.insert(m.to_string(), json!(c));
            }
        }
    }
    json!({ "z": z, "u": Value::Object(u) })
}

fn terms_to_json(e: &LieElement) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(sym, c)| json!({ "basis": sym.to_string(), "coeff": c }))
        .collect();
    Value::Array(terms)
}

fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) => {
            if *r.denom() == 1 {
                json!(*r.numer())
            } else {
                json!(format!("{}/{}", r.numer(), r.denom()))
            }
        }
        Scalar::Fp { v, .. } => json!(*v),
    }
}

fn presentation_to_json(p: &GradedPresentation) -> Value {
    json!({
        "deg_s": p.deg_s,
        "deg_r": p.deg_r,
        "lambda": scalar_to_json(&p.lambda),
    })
}

fn parse_field(s: &str) -> Result<FieldChoice, Error> {
    if s == "q" {
        return Ok(FieldChoice::Rational);
    }
    if let Some(p) = s.strip_prefix('p') {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad field spec '{}'", s)))?;
        return Ok(FieldChoice::Prime(p));
    }
    Err(Error::InvalidParameter(format!(
        "field must be 'q' or pP, got '{}'",
        s
    )))
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::Hall {
            variant,
            q,
            x,
            l,
            y,
            bound,
        } => {
            let variant = Variant::parse(&variant)?;
            let engine = HallEngine::new(variant, q, bound)?;
            let cat = OrbitCategory::new(variant, tubehall::field::PrimeField::new(q)?, bound);
            let (s1, s2, s3) = cat.orbit_partition(x, l, y)?;
            let out = json!({
                "variant": if variant == Variant::ClusterTube { "cluster" } else { "root" },
                "q": q,
                "x": x,
                "l": l,
                "y": y,
                "s1": s1,
                "s2": s2,
                "s3": s3,
                "f": (s1 + s2 + s3) % engine.modulus(),
                "meta": { "bound": bound },
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(0)
        }
        Cmd::Bracket {
            variant,
            x,
            y,
            q,
            bound,
        } => {
            let variant = Variant::parse(&variant)?;
            let engine = HallEngine::new(variant, q, bound)?;
            let b = engine.bracket_basis(x, y)?;
            let mut out = lie_to_json(&b);
            out.as_object_mut().unwrap().insert(
                "meta".into(),
                json!({ "bound": bound, "q": q, "x": x, "y": y }),
            );
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(0)
        }
        Cmd::VerifyConstants { variant, q, max } => {
            let variant = Variant::parse(&variant)?;
            let engine = HallEngine::new(variant, q, max.unsigned_abs() as usize)?;
            let report = verify_constants(&engine, max)?;
            let brackets: Vec<Value> = report
                .brackets
                .iter()
                .map(|(a, b, e)| {
                    json!({ "x": a.to_string(), "y": b.to_string(), "terms": terms_to_json(e) })
                })
                .collect();
            let mismatches: Vec<Value> = report
                .mismatches
                .iter()
                .map(|m| {
                    json!({
                        "x": m.x.to_string(),
                        "y": m.y.to_string(),
                        "got": terms_to_json(&m.got),
                        "expected": terms_to_json(&m.expected),
                    })
                })
                .collect();
            let failed = !report.mismatches.is_empty();
            let out = json!({
                "variant": if variant == Variant::ClusterTube { "cluster" } else { "root" },
                "q": q,
                "max_index": max,
                "brackets": brackets,
                "mismatches": mismatches,
                "meta": { "bound": max },
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if failed { 1 } else { 0 })
        }
        Cmd::Quotient { max, primes } => {
            let (table, zu, source): (
                Box<dyn Fn(i64, i64) -> LieElement>,
                Box<dyn Fn(i64) -> LieElement>,
                Value,
            ) = match primes {
                Some(ps) => {
                    let lifted = lift_integral(Variant::ClusterTube, &ps, 2 * max)?;
                    let diffs = lifted.diff_closed();
                    if !diffs.is_empty() {
                        eprintln!("lifted table disagrees with the closed forms");
                        return Ok(1);
                    }
                    let brackets = lifted.brackets;
                    let b2 = brackets.clone();
                    (
                        Box::new(move |i, j| {
                            brackets
                                .get(&(BasisSym::U(i), BasisSym::U(j)))
                                .cloned()
                                .unwrap_or_default()
                        }),
                        Box::new(move |n| {
                            b2.get(&(BasisSym::Z, BasisSym::U(n)))
                                .cloned()
                                .unwrap_or_default()
                        }),
                        json!(ps),
                    )
                }
                None => (
                    Box::new(|i, j| closed_pair(Variant::ClusterTube, i, j)),
                    Box::new(|n| closed_z_u(Variant::ClusterTube, n)),
                    json!("closed-form"),
                ),
            };
            let report = quotient_by_center(&*table, &*zu, max)?;
            let brackets: Vec<Value> = report
                .brackets
                .iter()
                .map(|(a, b, e)| {
                    let terms: Vec<Value> = e
                        .coeffs
                        .iter()
                        .map(|(s, c)| json!({ "basis": s.to_string(), "coeff": c }))
                        .collect();
                    json!({ "x": a.to_string(), "y": b.to_string(), "terms": terms })
                })
                .collect();
            let failed = !report.mismatches.is_empty();
            let out = json!({
                "max_index": max,
                "constants_source": source,
                "brackets": brackets,
                "mismatch_count": report.mismatches.len(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if failed { 1 } else { 0 })
        }
        Cmd::Heisenberg { max, primes } => {
            let primes = primes.unwrap_or_else(|| primes_for_magnitude(max));
            let report = heisenberg_check(max, &primes)?;
            let failed = !report.failures.is_empty();
            let out = json!({
                "max_index": max,
                "primes": primes,
                "failures": report.failures,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if failed { 1 } else { 0 })
        }
        Cmd::Classify { w, n, a, b, field } => {
            let choice = parse_field(&field)?;
            let a = Scalar::from_int(choice, a)?;
            let b = Scalar::from_int(choice, b)?;
            let params = derive_params(w, n, a, b)?;
            let lt = lambda_tilde(w, a, n);
            let ltp = lambda_tilde_prime(params.n_prime, b, params.d_prime, params.m);
            let (tubes, rank) = ar_shape(&params);
            let out = json!({
                "w": w,
                "n": n,
                "a": scalar_to_json(&a),
                "b": scalar_to_json(&b),
                "field": field,
                "d": params.d,
                "m": params.m,
                "n_prime": params.n_prime,
                "d_prime": params.d_prime,
                "c": params.c,
                "equivalent": equivalent(&params)?,
                "presentation": presentation_to_json(&lt),
                "presentation_prime": presentation_to_json(&ltp),
                "ar_shape": { "tubes": tubes, "rank": rank },
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(0)
        }
        Cmd::ArQuiver { w, n, height, dot } => {
            let one = Scalar::one(FieldChoice::Rational);
            let params = derive_params(w, n, one, one)?;
            let (tubes, rank) = ar_shape(&params);
            if dot {
                println!("{}", ar_quiver_dot(tubes, rank, height));
            } else {
                let out = json!({
                    "w": w,
                    "n": n,
                    "tube_count": tubes,
                    "tube_rank": rank,
                    "height": height,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            }
            Ok(0)
        }
        Cmd::Cover { d, n, window, dot } => {
            let ctx = CoverContext::new(d, n)?;
            let report = check_diagrams(&ctx, window);
            if dot {
                println!("{}", cover_dot(&ctx, window.min(6)));
                return Ok(0);
            }
            let failed = !report.violations.is_empty();
            let out = json!({
                "d": d,
                "n": n,
                "m": ctx.m,
                "n_prime": ctx.n_prime,
                "d_prime": ctx.d_prime,
                "c": ctx.c,
                "window": window,
                "checked": report.checked,
                "violations": report.violations,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(if failed { 1 } else { 0 })
        }
    }
}

/// DOT rendering of the tube shapes: one cluster per tube, inclusion arrows
/// up the rays and epi arrows down to the AR-translated ray.
fn ar_quiver_dot(tubes: i64, rank: i64, height: usize) -> String {
    let mut out = String::from("digraph ar_quiver {\n  rankdir=BT;\n");
    for t in 0..tubes {
        out.push_str(&format!(
            "  subgraph cluster_{} {{\n    label=\"tube {} (rank {})\";\n",
            t, t, rank
        ));
        for s in 1..=rank {
            for l in 1..=height {
                out.push_str(&format!(
                    "    t{}_s{}_l{} [label=\"({},{})\"];\n",
                    t, s, l, s, l
                ));
            }
        }
        for s in 1..=rank {
            for l in 1..=height {
                if l + 1 <= height {
                    out.push_str(&format!(
                        "    t{}_s{}_l{} -> t{}_s{}_l{};\n",
                        t,
                        s,
                        l,
                        t,
                        s,
                        l + 1
                    ));
                }
                if l >= 2 {
                    let s2 = if s == 1 { rank } else { s - 1 };
                    out.push_str(&format!(
                        "    t{}_s{}_l{} -> t{}_s{}_l{};\n",
                        t,
                        s,
                        l,
                        t,
                        s2,
                        l - 1
                    ));
                }
            }
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of a truncated window of the covering quiver and its
/// quotient; each covering vertex is labeled with its image under C.
fn cover_dot(ctx: &CoverContext, window: i64) -> String {
    let mut out = String::from("digraph cover {\n  rankdir=LR;\n");
    out.push_str("  subgraph cluster_q {\n    label=\"Q (truncated)\";\n");
    for j in 0..ctx.abs_d() {
        for i in -window..=window {
            let im = cover_map(ctx, VertexQ { j, i });
            out.push_str(&format!(
                "    q_{}_{} [label=\"({},{}) -> ({},{})\"];\n",
                j,
                idn(i),
                j,
                i,
                im.j,
                im.i
            ));
        }
        for i in -window..window {
            out.push_str(&format!(
                "    q_{}_{} -> q_{}_{};\n",
                j,
                idn(i + 1),
                j,
                idn(i)
            ));
        }
    }
    out.push_str("  }\n  subgraph cluster_qbar {\n    label=\"Q-bar\";\n");
    for j in 0..ctx.m {
        for i in 0..ctx.n_prime {
            out.push_str(&format!("    b_{}_{} [label=\"({},{})\"];\n", j, i, j, i));
        }
        for i in 0..ctx.n_prime {
            let next = (i + 1).rem_euclid(ctx.n_prime);
            out.push_str(&format!("    b_{}_{} -> b_{}_{};\n", j, next, j, i));
        }
    }
    out.push_str("  }\n}\n");
    out
}

fn idn(i: i64) -> String {
    if i < 0 {
        format!("m{}", -i)
    } else {
        format!("{}", i)
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
    }
}
