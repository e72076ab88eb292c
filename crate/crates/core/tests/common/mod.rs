//! Helpers shared by the integration tests. The numeric helpers here are
//! deliberately independent of the library: eigenvalues come from the
//! textbook quadratic formula on raw coordinate sums.

#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::{Path, PathBuf};

use framescale::{Frame, Vec2};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(s11, s12, s22)` of `Σ (wᵢ vᵢ)(wᵢ vᵢ)ᵀ`.
pub fn operator(points: &[[f64; 2]], weights: &[f64]) -> (f64, f64, f64) {
    points.iter().zip(weights).fold((0.0, 0.0, 0.0), |(a, c, b), (p, w)| {
        let (x, y) = (w * p[0], w * p[1]);
        (a + x * x, c + x * y, b + y * y)
    })
}

/// Eigenvalues `(hi, lo)` of `[[a, c], [c, b]]`.
pub fn eig2(a: f64, c: f64, b: f64) -> (f64, f64) {
    let mean = 0.5 * (a + b);
    let r = (0.5 * (a - b)).hypot(c);
    (mean + r, mean - r)
}

pub fn cond_of(points: &[[f64; 2]], weights: &[f64]) -> f64 {
    let (a, c, b) = operator(points, weights);
    let (hi, lo) = eig2(a, c, b);
    if lo <= 1e-14 * hi.max(1.0) {
        f64::INFINITY
    } else {
        hi / lo
    }
}

pub fn points(frame: &Frame) -> Vec<[f64; 2]> {
    frame.vectors().iter().map(|v| [v.x, v.y]).collect()
}

pub fn polar(r: f64, theta: f64) -> Vec2 {
    Vec2::new(r * theta.cos(), r * theta.sin())
}

pub fn random_sign(rng: &mut impl Rng) -> f64 {
    if rng.gen_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// Frame whose directions mod π fit in an arc of width `spread`; the first
/// two vectors sit on the arc endpoints. Norms in `norms`, random signs.
pub fn arc_frame(rng: &mut impl Rng, m: usize, spread: f64, norms: (f64, f64)) -> Frame {
    let start = rng.gen_range(0.0..PI);
    let vectors = (0..m)
        .map(|i| {
            let theta = match i {
                0 => start,
                1 => start + spread,
                _ => start + rng.gen_range(0.02 * spread..0.98 * spread),
            };
            polar(random_sign(rng) * rng.gen_range(norms.0..norms.1), theta)
        })
        .collect();
    Frame::new(vectors).unwrap()
}

/// Non-scalable frame: spread drawn from `[0.1, π/2 - 0.05]`.
pub fn quadrant_frame(rng: &mut impl Rng, m: usize, norms: (f64, f64)) -> Frame {
    let spread = rng.gen_range(0.1..FRAC_PI_2 - 0.05);
    arc_frame(rng, m, spread, norms)
}

pub fn general_frame(rng: &mut impl Rng, m: usize) -> Frame {
    loop {
        let vectors: Vec<Vec2> = (0..m)
            .map(|_| Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if vectors.iter().all(|v| v.norm() > 1e-3) {
            if let Ok(f) = Frame::new(vectors) {
                return f;
            }
        }
    }
}

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// One CLI invocation checked against a golden file.
pub struct GoldenCase {
    pub name: String,
    pub args: Vec<String>,
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let mut cases = Vec::new();
    for (stem, input) in [
        ("orthonormal", "orthonormal.csv"),
        ("mercedes", "mercedes.json"),
        ("three_quadrant", "three_quadrant.csv"),
    ] {
        let mut add = |suffix: &str, args: &[&str]| {
            let mut full = vec!["framescale".to_string()];
            full.extend(args.iter().map(|s| s.replace("{in}", input).replace("{stem}", stem)));
            full.push("--json".to_string());
            cases.push(GoldenCase { name: format!("{stem}_{suffix}"), args: full });
        };
        add("analyze", &["analyze", "{in}"]);
        add("scalable", &["scalable", "{in}"]);
        add("scale", &["scale", "{in}"]);
        add("scale_eps", &["scale", "{in}", "--epsilon", "0.1"]);
        add("verify", &["verify", "{in}", "--weights", "../golden/{stem}_scale.golden"]);
        add("oracle", &["oracle", "{in}", "--levels", "21"]);
        add("oracle_eps", &["oracle", "{in}", "--epsilon", "0.1"]);
    }
    cases
}

/// Runs the CLI in-process from the fixtures directory. The golden text is
/// stdout on success, otherwise the exit code and stderr.
pub fn run_case(case: &GoldenCase) -> String {
    let _cwd = CwdGuard::enter(&fixtures_dir());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = framescale::cli::run(&case.args, &mut out, &mut err);
    if code == 0 {
        String::from_utf8(out).unwrap()
    } else {
        format!("exit {code}\n{}", String::from_utf8(err).unwrap())
    }
}

pub fn golden_path(case: &GoldenCase) -> PathBuf {
    golden_dir().join(format!("{}.golden", case.name))
}

/// Compares every case with its golden file, or rewrites the files when
/// `UPDATE_GOLDEN` is set. Returns the names of mismatching cases.
pub fn check_goldens() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for case in golden_cases() {
        let got = run_case(&case);
        let path = golden_path(&case);
        if update {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            _ => mismatches.push(case.name.clone()),
        }
    }
    mismatches
}

static CWD_LOCK: std::sync::Mutex<()> = std::sync::Mutex::new(());

/// Serializes changes of the process working directory.
pub struct CwdGuard {
    previous: PathBuf,
    _lock: std::sync::MutexGuard<'static, ()>,
}

impl CwdGuard {
    pub fn enter(dir: &Path) -> Self {
        let lock = CWD_LOCK.lock().unwrap_or_else(|e| e.into_inner());
        let previous = std::env::current_dir().unwrap();
        std::env::set_current_dir(dir).unwrap();
        Self { previous, _lock: lock }
    }
}

impl Drop for CwdGuard {
    fn drop(&mut self) {
        let _ = std::env::set_current_dir(&self.previous);
    }
}
