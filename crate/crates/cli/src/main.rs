//! `sgon`: exact sparse-geometry analyses of lattice bases and half-plane
//! points, with JSON input files and deterministic reports.

mod io;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde_json::{json, Value};

use sgon_core::exact::rational::{format_rational, parse_rational};
use sgon_core::planar::cm::cm_analyze;
use sgon_core::planar::geodesic::{geodesic_classify, GeodesicShape};
use sgon_core::planar::jinv::j_invariant;
use sgon_core::planar::reduce::reduce_to_fundamental;
use sgon_core::planar::region::{region_classify, Segment};
use sgon_core::planar::vr::{isogeny_degree, vr_decide, VRCertificate};
use sgon_core::sparse::decompose::{mu_estimate, nu, row_decompose};
use sgon_core::sparse::find::{find_sparse, verify_thm1_instance};
use sgon_core::sparse::levels::{sparsity_levels, DEFAULT_DIMENSION_CAP};
use sgon_core::sparse::minima::{sparse_minima_oracle, DEFAULT_NODE_BUDGET};
use sgon_core::sparse::rect::rectangular_sublattice;
use sgon_core::verify::{battery_cm, battery_siegel, battery_virt_rect, battery_vr_geodesic};

use io::{from_core, parse_lattice_file, parse_tau_file, CliError};
use report::{
    val_int_matrix, val_int_vector, val_numeric, val_quad, val_rational, val_symreal_vector,
    val_tau, Format, Report,
};

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "sgon",
    version,
    about = "Sparse geometry of lattices: exact rational-dimension analysis, sparse vectors, rectangular sublattices, and the planar theory over real quadratic fields"
)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    /// Working precision in decimal digits (>= 16). Overrides SGON_PRECISION.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rational dimension, row scalars, and norm data of a lattice basis
    LatticeAnalyze { input: PathBuf },
    /// Sparse lattice vectors from low-dimension row subsets, with bounds
    LatticeSparse {
        input: PathBuf,
        /// Sparsity target (1 <= k < n)
        #[arg(long)]
        k: usize,
    },
    /// Diagonal sublattice and its exact index
    LatticeRect { input: PathBuf },
    /// Exact successive sparsity levels with witnesses
    LatticeSlevels { input: PathBuf },
    /// Brute-force k-sparse successive minima inside a sup-norm box
    LatticeMinima {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Sup-norm radius (rational, e.g. "3" or "5/2")
        #[arg(long)]
        radius: String,
    },
    /// Reduce a point to the fundamental domain
    TauReduce { input: PathBuf },
    /// Decide virtual rectangularity and emit a certificate
    TauVr { input: PathBuf },
    /// Isogeny degree of the rectangular sublattice, cross-checked
    TauIsogeny { input: PathBuf },
    /// Classify the geodesic through the point
    TauGeodesic { input: PathBuf },
    /// Complex-multiplication analysis and rotation families
    TauCm { input: PathBuf },
    /// Numeric j-invariant from the q-expansion
    TauJinv {
        input: PathBuf,
        /// Series terms (1..=20)
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Run the randomized cross-consistency batteries
    VerifySuite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    let code = match std::panic::catch_unwind(run) {
        Ok(code) => code,
        Err(_) => {
            eprintln!("internal error: unexpected panic");
            3
        }
    };
    std::process::exit(code);
}

fn run() -> i32 {
    let args = Args::parse();
    let format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let precision = args.precision.unwrap_or_else(|| {
        std::env::var("SGON_PRECISION")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(50)
    });
    if precision < 16 {
        eprintln!("domain error: precision must be at least 16");
        return 2;
    }
    match dispatch(&args.command, precision) {
        Ok(rep) => {
            print!("{}", rep.render(format));
            0
        }
        Err(e) => {
            eprintln!("{}", e);
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Cmd, precision: u32) -> Result<Report, CliError> {
    let digits = precision;
    match cmd {
        Cmd::LatticeAnalyze { input } => {
            let lat = parse_lattice_file(input, precision)?;
            let dec = row_decompose(&lat);
            let nu_val = nu(&lat, precision).map_err(from_core)?;
            let mu = mu_estimate(&lat, precision).map_err(from_core)?;
            let sup = lat.sup_norm(precision).map_err(from_core)?;
            let det = lat.numeric_det(precision).map_err(from_core)?;
            let body = json!({
                "n": lat.n(),
                "row_dimensions": dec.rows.iter().map(|r| r.d).collect::<Vec<_>>(),
                "total_dimension": dec.total,
                "row_scalars": match &nu_val.alphas {
                    Some(alphas) => val_symreal_vector(alphas),
                    None => Value::Null,
                },
                "nu_is_zero": nu_val.is_zero,
                "nu_numeric": val_numeric(&nu_val.numeric_abs, digits),
                "mu_numeric": val_numeric(&mu.mu, digits),
                "mu_symbol_count": mu.rank,
                "sup_norm": val_numeric(&sup, digits),
                "det_numeric": val_numeric(&det, digits),
                "f_matrix": val_int_matrix(&dec.f_matrix),
            });
            Ok(Report {
                command: "lattice-analyze",
                body,
                provenance: vec![
                    "d(L) = sum over rows of dim_Q span of the row entries",
                    "nu(L) = product of |alpha_i| when every row is alpha_i * (primitive integer vector), else 0",
                    "mu = infinity-operator norm of the coefficient map x -> stacked integer directions",
                ],
                precision,
            })
        }
        Cmd::LatticeSparse { input, k } => {
            let lat = parse_lattice_file(input, precision)?;
            if *k == 0 || *k >= lat.n() {
                return Err(CliError::Domain(format!(
                    "k must satisfy 1 <= k < n = {}",
                    lat.n()
                )));
            }
            let reports = find_sparse(&lat, *k, precision).map_err(from_core)?;
            let mut items = Vec::new();
            for rep in &reports {
                let verified = verify_thm1_instance(&lat, rep).map_err(from_core)?;
                items.push(json!({
                    "index_set": rep.index_set.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "d_I": rep.d_i,
                    "ell": rep.ell,
                    "preimages": rep.preimages.iter().map(|y| val_int_vector(y)).collect::<Vec<_>>(),
                    "vectors": rep.vectors.iter().map(|x| val_symreal_vector(x)).collect::<Vec<_>>(),
                    "zero_norms": rep.zero_norms,
                    "sup_norms": rep.sup_norms.iter().map(|s| val_numeric(s, digits)).collect::<Vec<_>>(),
                    "product": val_numeric(&rep.product, digits),
                    "bound": val_numeric(&rep.bound, digits),
                    "bound_satisfied": rep.bound_satisfied,
                    "verified_at_double_precision": verified,
                }));
            }
            Ok(Report {
                command: "lattice-sparse",
                body: json!({ "k": k, "qualifying_sets": items.len(), "reports": items }),
                provenance: vec![
                    "a row subset I with d_I(A) < n yields n - d_I(A) independent vectors with at most k nonzero coordinates",
                    "prod |x_i| <= n^(n - d_I/2) * |A|^n * mu^(d_I)",
                ],
                precision,
            })
        }
        Cmd::LatticeRect { input } => {
            let lat = parse_lattice_file(input, precision)?;
            let r = rectangular_sublattice(&lat, precision).map_err(from_core)?;
            Ok(Report {
                command: "lattice-rect",
                body: json!({
                    "index": r.index.to_string(),
                    "det_f": r.det_f.to_string(),
                    "diagonal": val_symreal_vector(&r.diagonal),
                    "transform": val_int_matrix(&r.transform),
                    "numeric_cross_check": val_numeric(&r.numeric_cross_check, digits),
                    "cross_check_ok": r.cross_check_ok,
                }),
                provenance: vec![
                    "B = A adj(F(A)) is diagonal with entries det(F(A)) alpha_i",
                    "[L : M] = |det F(A)|^(n-1) = (det L / nu(L))^(n-1)",
                ],
                precision,
            })
        }
        Cmd::LatticeSlevels { input } => {
            let lat = parse_lattice_file(input, precision)?;
            let lv = sparsity_levels(&lat, DEFAULT_DIMENSION_CAP).map_err(from_core)?;
            let witnesses: Vec<Value> = lv
                .witnesses
                .iter()
                .map(|w| {
                    json!({
                        "level": w.level,
                        "count": w.preimages.len(),
                        "preimages": w.preimages.iter().map(|y| val_int_vector(y)).collect::<Vec<_>>(),
                        "vectors": w.vectors.iter().map(|x| val_symreal_vector(x)).collect::<Vec<_>>(),
                        "zero_norms": w.zero_norms,
                    })
                })
                .collect();
            Ok(Report {
                command: "lattice-slevels",
                body: json!({ "levels": lv.s, "witnesses": witnesses }),
                provenance: vec![
                    "s_i = least s such that the span of the s-sparse lattice vectors has dimension at least i",
                    "support enumeration: kernels of the stacked integer directions of the complementary rows",
                ],
                precision,
            })
        }
        Cmd::LatticeMinima { input, k, radius } => {
            let lat = parse_lattice_file(input, precision)?;
            if *k == 0 || *k >= lat.n() {
                return Err(CliError::Domain(format!(
                    "k must satisfy 1 <= k < n = {}",
                    lat.n()
                )));
            }
            let radius = parse_rational(radius)
                .ok_or_else(|| CliError::Domain(format!("`{}` is not a rational radius", radius)))?;
            let r = sparse_minima_oracle(&lat, *k, &radius, precision, DEFAULT_NODE_BUDGET)
                .map_err(from_core)?;
            Ok(Report {
                command: "lattice-minima",
                body: json!({
                    "k": k,
                    "radius": format_rational(&radius),
                    "minima": r.minima.iter().map(|x| val_numeric(x, digits)).collect::<Vec<_>>(),
                    "preimages": r.preimages.iter().map(|y| val_int_vector(y)).collect::<Vec<_>>(),
                    "witnesses": r.witnesses.iter().map(|x| val_symreal_vector(x)).collect::<Vec<_>>(),
                    "zero_norms": r.zero_norms,
                    "complete": r.complete,
                    "incomplete_beyond_radius": !r.complete,
                    "box_half_width": r.box_half_width.to_string(),
                }),
                provenance: vec![
                    "k-sparse successive minima: least sup-norms of independent lattice vectors with at most k nonzero coordinates",
                ],
                precision,
            })
        }
        Cmd::TauReduce { input } => {
            let tau = parse_tau_file(input)?;
            let r = reduce_to_fundamental(&tau).map_err(from_core)?;
            let region = region_classify(&r.tau).map_err(from_core)?;
            Ok(Report {
                command: "tau-reduce",
                body: json!({
                    "reduced": val_tau(&r.tau),
                    "transform": [
                        [r.transform[0][0].to_string(), r.transform[0][1].to_string()],
                        [r.transform[1][0].to_string(), r.transform[1][1].to_string()],
                    ],
                    "steps": r.steps,
                    "segment": segment_name(region.segment),
                    "j_real": region.j_real,
                    "well_rounded": region.wr,
                    "rectangular": region.rectangular,
                }),
                provenance: vec![
                    "translate by integers and invert until -1/2 < a <= 1/2 and |tau| >= 1, keeping the canonical boundary half",
                ],
                precision,
            })
        }
        Cmd::TauVr { input } => {
            let tau = parse_tau_file(input)?;
            let cert = vr_decide(&tau);
            Ok(Report {
                command: "tau-vr",
                body: certificate_value(&cert),
                provenance: vec![
                    "virtually rectangular iff a is rational or some t satisfies a - b t and a + b/t rational",
                    "decision: the discriminant of a1 u^2 + B1 u - a1 (a1^2 D + B0) must be a rational square",
                ],
                precision,
            })
        }
        Cmd::TauIsogeny { input } => {
            let tau = parse_tau_file(input)?;
            let cert = vr_decide(&tau);
            if !cert.is_vr() {
                return Ok(Report {
                    command: "tau-isogeny",
                    body: json!({
                        "certificate": certificate_value(&cert),
                        "degree": Value::Null,
                    }),
                    provenance: vec!["no rectangular sublattice exists for this point"],
                    precision,
                });
            }
            let deg = isogeny_degree(&tau, &cert).map_err(from_core)?;
            Ok(Report {
                command: "tau-isogeny",
                body: json!({
                    "certificate": certificate_value(&cert),
                    "degree": val_rational(&deg.delta),
                    "constructive_index": val_rational(&deg.constructive_index),
                    "match": deg.matches,
                    "is_integer": deg.is_integer,
                }),
                provenance: vec![
                    "degree = |b| v w (t^2 + 1) / |t| for the witness rotation t",
                    "cross-check: index of the sublattice spanned by the two explicit orthogonal vectors of the rotated lattice",
                ],
                precision,
            })
        }
        Cmd::TauGeodesic { input } => {
            let tau = parse_tau_file(input)?;
            let g = geodesic_classify(&tau);
            let shape = match &g.shape {
                GeodesicShape::Vertical { x } => json!({ "kind": "vertical", "x": val_quad(x) }),
                GeodesicShape::Semicircle { p, q } => json!({
                    "kind": "semicircle",
                    "p": val_rational(p),
                    "q": val_rational(q),
                }),
            };
            Ok(Report {
                command: "tau-geodesic",
                body: json!({
                    "shape": shape,
                    "closed_at_infinity": g.closed_at_infinity,
                    "endpoints": match &g.endpoints {
                        Some((lo, hi)) => json!([val_rational(lo), val_rational(hi)]),
                        None => Value::Null,
                    },
                }),
                provenance: vec![
                    "the semicircle through the point with rational trace data satisfies a^2 + b^2 - a p + q = 0",
                    "closed at infinity iff vertical with rational x or p^2 - 4q is a rational square",
                ],
                precision,
            })
        }
        Cmd::TauCm { input } => {
            let tau = parse_tau_file(input)?;
            let rep = cm_analyze(&tau).map_err(from_core)?;
            let samples: Vec<Value> = rep
                .samples
                .iter()
                .map(|s| {
                    json!({
                        "q": val_rational(&s.q),
                        "t": val_quad(&s.t),
                        "a_minus_bt": val_rational(&s.a_minus_bt),
                        "a_plus_b_over_t": val_rational(&s.a_plus_b_over_t),
                    })
                })
                .collect();
            Ok(Report {
                command: "tau-cm",
                body: json!({
                    "is_cm": rep.is_cm,
                    "samples": samples,
                    "uniqueness": match &rep.uniqueness {
                        Some(u) => json!({
                            "t": val_quad(&u.t),
                            "other": val_quad(&u.other),
                            "product_is_minus_one": u.product_is_minus_one,
                        }),
                        None => Value::Null,
                    },
                }),
                provenance: vec![
                    "CM iff a and b^2 are rational; then every t = q b with rational q is a valid rotation",
                    "otherwise the two quadratic roots are negative reciprocals (the rotation is essentially unique)",
                ],
                precision,
            })
        }
        Cmd::TauJinv { input, terms } => {
            if *terms == 0 || *terms > 20 {
                return Err(CliError::Domain(format!(
                    "terms must lie in 1..=20, got {}",
                    terms
                )));
            }
            let tau = parse_tau_file(input)?;
            let j = j_invariant(&tau, *terms, precision).map_err(from_core)?;
            Ok(Report {
                command: "tau-jinv",
                body: json!({
                    "re": val_numeric(&j.re, digits),
                    "im": val_numeric(&j.im, digits),
                    "error_bound": val_numeric(&j.error_bound, 40),
                    "terms": j.terms,
                    "reduced": val_tau(&j.reduced),
                }),
                provenance: vec![
                    "j = 1/Q + 744 + sum c_k Q^k with Q = exp(2 pi i tau), evaluated on the domain representative",
                ],
                precision,
            })
        }
        Cmd::VerifySuite { seed } => {
            let reports = vec![
                battery_virt_rect(*seed, 200),
                battery_siegel(seed.wrapping_add(1), 1000),
                battery_vr_geodesic(seed.wrapping_add(2), 500),
                battery_cm(seed.wrapping_add(3), 50, 50),
            ];
            let any_violation = reports.iter().any(|r| !r.passed());
            let items: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "trials": r.trials,
                        "violations": r.violations,
                        "notes": r.notes,
                    })
                })
                .collect();
            let rep = Report {
                command: "verify-suite",
                body: json!({ "seed": seed, "passed": !any_violation, "batteries": items }),
                provenance: vec![
                    "equivalence of d(L) = n, nu(L) > 0, and all sparsity levels 1 on random lattices",
                    "sup-norm product bound (sqrt(n) |B|)^m on random integer kernels with exhaustive fallback",
                    "virtual rectangularity against geodesic closure; CM families and root-pair uniqueness",
                ],
                precision,
            };
            if any_violation {
                eprint!("{}", rep.render(Format::Text));
                return Err(CliError::Internal(
                    "verification batteries reported violations".into(),
                ));
            }
            Ok(rep)
        }
    }
}

fn segment_name(seg: Segment) -> &'static str {
    match seg {
        Segment::LeftEdge => "left-edge",
        Segment::UnitArc => "unit-arc",
        Segment::ImaginaryAxis => "imaginary-axis",
        Segment::Interior => "interior",
    }
}

fn certificate_value(cert: &VRCertificate) -> Value {
    match cert {
        VRCertificate::RationalA { denominator } => json!({
            "kind": "rational-a",
            "denominator": denominator.to_string(),
            "degree": denominator.to_string(),
            "is_vr": true,
        }),
        VRCertificate::IrrationalA { r, t, v, w, delta } => json!({
            "kind": "irrational-a",
            "r": val_rational(r),
            "t": val_quad(t),
            "v": v.to_string(),
            "w": w.to_string(),
            "delta": val_rational(delta),
            "delta_is_integer": delta.denom().is_one(),
            "is_vr": true,
        }),
        VRCertificate::NotVR { witness } => json!({
            "kind": "not-vr",
            "witness_discriminant": val_rational(witness),
            "is_vr": false,
        }),
    }
}
