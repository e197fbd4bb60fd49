//! Randomized cross-consistency batteries. Each battery is deterministic for
//! a fixed seed and reports the number of violations it found; any violation
//! is a hard failure for the caller.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::quad::QuadNum;
use crate::exact::rational::Rational;
use crate::exact::symbol::{SymReal, SymbolBasis};
use crate::intlinalg::lll::{reduce_kernel_basis, siegel_bound_holds, siegel_witness_search};
use crate::intlinalg::matrix::{integer_kernel, IntMatrix};
use crate::planar::cm::{cm_analyze, distinct_sample_count};
use crate::planar::geodesic::geodesic_classify;
use crate::planar::tau::Tau;
use crate::planar::vr::{vr_decide, VRCertificate};
use crate::sparse::decompose::{nu, rational_dimension};
use crate::sparse::lattice::LatticeBasis;
use crate::sparse::levels::{sparsity_levels, DEFAULT_DIMENSION_CAP};

#[derive(Clone, Debug)]
pub struct BatteryReport {
    pub name: &'static str,
    pub trials: usize,
    pub violations: usize,
    pub notes: Vec<String>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn rand_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    let num = loop {
        let v = rng.gen_range(-max_num..=max_num);
        if v != 0 {
            break v;
        }
    };
    let den = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn rand_rational_allow_zero(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    let num = rng.gen_range(-max_num..=max_num);
    let den = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

const FIELD_CHOICES: [u64; 4] = [2, 3, 5, 7];

/// Random lattice basis mixing rational and symbolic rows; rows with
/// rational dimension one or two, resampled until nonsingular.
pub fn random_lattice(rng: &mut ChaCha8Rng, max_n: usize) -> LatticeBasis {
    let basis = SymbolBasis::standard();
    let n = rng.gen_range(2..=max_n);
    loop {
        let mut entries: Vec<SymReal> = Vec::with_capacity(n * n);
        for _ in 0..n {
            let style = rng.gen_range(0..10);
            if style < 6 {
                // d_i = 1: one scalar times a primitive integer vector
                let sym_idx = rng.gen_range(0..basis.len());
                let coeff = rand_rational(rng, 5, 3);
                let f = random_primitive_vector(rng, n);
                for j in 0..n {
                    entries.push(SymReal::from_symbol(
                        basis.clone(),
                        sym_idx,
                        &coeff * Rational::from_integer(f[j].clone()),
                    ));
                }
            } else {
                // d_i = 2: two distinct symbol directions
                let s1 = rng.gen_range(0..basis.len());
                let s2 = loop {
                    let s = rng.gen_range(0..basis.len());
                    if s != s1 {
                        break s;
                    }
                };
                let c1 = rand_rational(rng, 4, 2);
                let c2 = rand_rational(rng, 4, 2);
                let f = random_primitive_vector(rng, n);
                let g = loop {
                    let g = random_primitive_vector(rng, n);
                    if !proportional(&f, &g) {
                        break g;
                    }
                };
                for j in 0..n {
                    let mut e = SymReal::from_symbol(
                        basis.clone(),
                        s1,
                        &c1 * Rational::from_integer(f[j].clone()),
                    );
                    e = e.add(&SymReal::from_symbol(
                        basis.clone(),
                        s2,
                        &c2 * Rational::from_integer(g[j].clone()),
                    ));
                    entries.push(e);
                }
            }
        }
        if let Ok(lat) = LatticeBasis::new(basis.clone(), entries, 50) {
            return lat;
        }
    }
}

fn random_primitive_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigInt> {
    loop {
        let v: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
            .collect();
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut g = BigInt::zero();
        for x in &v {
            g = num_integer::gcd(g, x.clone());
        }
        return v.into_iter().map(|x| x / &g).collect();
    }
}

fn proportional(a: &[BigInt], b: &[BigInt]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// The three equivalent characterizations of axis-aligned virtual
/// rectangularity must agree pairwise on every sample.
pub fn battery_virt_rect(seed: u64, trials: usize) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut notes = Vec::new();
    for trial in 0..trials {
        let lat = random_lattice(&mut rng, 6);
        let (_, d_total) = rational_dimension(&lat);
        let p1 = d_total == lat.n();
        let p2 = match nu(&lat, 50) {
            Ok(v) => !v.is_zero,
            Err(e) => {
                violations += 1;
                notes.push(format!("trial {}: nu failed: {}", trial, e));
                continue;
            }
        };
        let p3 = match sparsity_levels(&lat, DEFAULT_DIMENSION_CAP) {
            Ok(lv) => lv.s.iter().all(|&s| s == 1),
            Err(e) => {
                violations += 1;
                notes.push(format!("trial {}: levels failed: {}", trial, e));
                continue;
            }
        };
        if p1 != p2 || p2 != p3 {
            violations += 1;
            notes.push(format!(
                "trial {}: d(L)=n is {}, nu>0 is {}, all s_i=1 is {}",
                trial, p1, p2, p3
            ));
        }
    }
    BatteryReport {
        name: "virt-rect-equivalence",
        trials,
        violations,
        notes,
    }
}

/// Random integer matrices: the reduced kernel basis meets the sup-norm
/// product bound `(sqrt(n) |B|)^m`, with the exhaustive witness search
/// resolving any misses.
pub fn battery_siegel(seed: u64, trials: usize) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut lll_misses = 0usize;
    let mut notes = Vec::new();
    for trial in 0..trials {
        let n = rng.gen_range(2..=6usize);
        let m = rng.gen_range(1..n);
        let matrix = loop {
            let rows: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-10i64..=10)).collect())
                .collect();
            if rows.iter().any(|r| r.iter().any(|&v| v != 0)) {
                break IntMatrix::from_i64_rows(&rows);
            }
        };
        let sup_b = matrix.sup_norm();
        let kernel = integer_kernel(&matrix);
        let reduced = reduce_kernel_basis(&kernel, None);
        if siegel_bound_holds(&reduced.basis.vectors, n, m, &sup_b) {
            continue;
        }
        lll_misses += 1;
        let bound_sq = BigInt::from(n).pow(m as u32) * sup_b.pow(2 * m as u32);
        match siegel_witness_search(&reduced.basis, &bound_sq, 4_000_000) {
            Some(_) => {}
            None => {
                violations += 1;
                notes.push(format!(
                    "trial {}: {}x{} matrix exceeds the bound with no witness",
                    trial, m, n
                ));
            }
        }
    }
    if lll_misses > 0 {
        notes.push(format!(
            "{} reduced bases exceeded the bound and were resolved exhaustively",
            lll_misses
        ));
    }
    BatteryReport {
        name: "siegel-product-bound",
        trials,
        violations,
        notes,
    }
}

fn random_quadnum(rng: &mut ChaCha8Rng, d: u64, max_den: i64) -> QuadNum {
    QuadNum::new(
        rand_rational_allow_zero(rng, 9, max_den),
        rand_rational_allow_zero(rng, 9, max_den),
        d,
    )
    .expect("field constant is squarefree")
}

/// Random point in the upper half-plane over a random small field.
pub fn random_tau(rng: &mut ChaCha8Rng, kind: usize) -> Tau {
    let d = FIELD_CHOICES[rng.gen_range(0..FIELD_CHOICES.len())];
    match kind % 3 {
        0 => {
            // rational real part
            let a = QuadNum::rational(rand_rational_allow_zero(rng, 19, 20));
            let b = loop {
                let b = random_quadnum(rng, d, 20);
                if b.sign() > 0 {
                    break b;
                }
            };
            Tau::new(a, b).expect("b > 0")
        }
        1 => constructed_vr_tau(rng, d, false),
        _ => {
            // generic point, usually not virtually rectangular
            let a = loop {
                let a = random_quadnum(rng, d, 20);
                if !a.is_rational() {
                    break a;
                }
            };
            let b = loop {
                let b = random_quadnum(rng, d, 20);
                if b.sign() > 0 {
                    break b;
                }
            };
            Tau::new(a, b).expect("b > 0")
        }
    }
}

/// A point that is virtually rectangular by construction: pick a rotation
/// parameter `t` and rationals `r != s`, then `b = (s - r) t / (1 + t^2)`
/// and `a = r + b t` satisfy `a - b t = r` and `a + b/t = s`.
pub fn constructed_vr_tau(rng: &mut ChaCha8Rng, d: u64, force_irrational_a: bool) -> Tau {
    loop {
        let t = if force_irrational_a {
            // both parts nonzero makes t^2 (hence a) irrational
            QuadNum::new(rand_rational(rng, 5, 3), rand_rational(rng, 5, 3), d)
                .expect("squarefree")
        } else {
            let q = rand_rational_allow_zero(rng, 5, 3);
            QuadNum::new(rand_rational(rng, 5, 3), q, d).expect("squarefree")
        };
        if t.is_zero() {
            continue;
        }
        let r = rand_rational_allow_zero(rng, 9, 10);
        let s = rand_rational_allow_zero(rng, 9, 10);
        if r == s {
            continue;
        }
        let denom = t.square().add(&QuadNum::one());
        let mut b = t
            .mul_rational(&(&s - &r))
            .div(&denom)
            .expect("1 + t^2 > 0");
        // flipping (b, t) to (-b, -t) preserves both witness identities
        let mut t = t;
        match b.sign() {
            1 => {}
            -1 => {
                b = b.neg();
                t = t.neg();
            }
            _ => continue,
        }
        let a = QuadNum::rational(r.clone()).add(&b.mul(&t));
        if force_irrational_a && a.is_rational() {
            continue;
        }
        if let Ok(tau) = Tau::new(a, b) {
            return tau;
        }
    }
}

/// Virtual rectangularity against the geodesic closure criterion.
pub fn battery_vr_geodesic(seed: u64, trials: usize) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut vr_count = 0usize;
    let mut notes = Vec::new();
    for trial in 0..trials {
        let tau = random_tau(&mut rng, trial);
        let cert = vr_decide(&tau);
        let geo = geodesic_classify(&tau);
        if cert.is_vr() {
            vr_count += 1;
        }
        if cert.is_vr() != geo.closed_at_infinity {
            violations += 1;
            notes.push(format!(
                "trial {}: tau = {} has vr = {} but closed-at-infinity = {}",
                trial,
                tau,
                cert.is_vr(),
                geo.closed_at_infinity
            ));
        }
    }
    notes.push(format!(
        "{} of {} samples were virtually rectangular",
        vr_count, trials
    ));
    BatteryReport {
        name: "vr-geodesic-consistency",
        trials,
        violations,
        notes,
    }
}

/// CM points carry a family of rotation parameters; non-CM virtually
/// rectangular points have an essentially unique one.
pub fn battery_cm(seed: u64, cm_trials: usize, non_cm_trials: usize) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut notes = Vec::new();

    for trial in 0..cm_trials {
        let d = FIELD_CHOICES[rng.gen_range(0..FIELD_CHOICES.len())];
        // a rational, b a positive rational multiple of sqrt(D)
        let a = QuadNum::rational(rand_rational_allow_zero(&mut rng, 9, 10));
        let q = rand_rational(&mut rng, 9, 10).abs();
        let b = QuadNum::new(Rational::zero(), q, d).expect("squarefree");
        let tau = Tau::new(a, b).expect("b > 0");
        match cm_analyze(&tau) {
            Ok(rep) if rep.is_cm && distinct_sample_count(&rep) >= 5 => {}
            Ok(rep) => {
                violations += 1;
                notes.push(format!(
                    "cm trial {}: is_cm = {}, distinct samples = {}",
                    trial,
                    rep.is_cm,
                    distinct_sample_count(&rep)
                ));
            }
            Err(e) => {
                violations += 1;
                notes.push(format!("cm trial {}: {}", trial, e));
            }
        }
    }

    for trial in 0..non_cm_trials {
        let d = FIELD_CHOICES[rng.gen_range(0..FIELD_CHOICES.len())];
        let tau = constructed_vr_tau(&mut rng, d, true);
        match vr_decide(&tau) {
            VRCertificate::IrrationalA { .. } => {}
            other => {
                violations += 1;
                notes.push(format!(
                    "non-cm trial {}: constructed point decided as {:?}",
                    trial, other
                ));
                continue;
            }
        }
        match cm_analyze(&tau) {
            Ok(rep) if !rep.is_cm => match rep.uniqueness {
                Some(u) if u.product_is_minus_one => {}
                _ => {
                    violations += 1;
                    notes.push(format!(
                        "non-cm trial {}: root product is not -1 for tau = {}",
                        trial, tau
                    ));
                }
            },
            Ok(_) => {
                violations += 1;
                notes.push(format!("non-cm trial {}: classified as CM", trial));
            }
            Err(e) => {
                violations += 1;
                notes.push(format!("non-cm trial {}: {}", trial, e));
            }
        }
    }
    BatteryReport {
        name: "cm-family-uniqueness",
        trials: cm_trials + non_cm_trials,
        violations,
        notes,
    }
}
