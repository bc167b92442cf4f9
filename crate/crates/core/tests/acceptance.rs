//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::time::Instant;

use quasipoly_core::construct::{construct_u_polygon_in_model_set, construct_u_polygon_ring, ConstructError};
use quasipoly_core::fields::{admissible_edge_numbers, decide_vi, decide_vii};
use quasipoly_core::geometry::{
    affine_regularity_residual, check_alternate_split, consecutive_edge_cross_ratio_regular,
    cross_ratio_of_directions, cross_ratio_of_vectors, darboux_iterate, edge_directions,
    edges_within_directions, is_u_polygon, u_class, Direction, FloatPolygon,
};
use quasipoly_core::modelset::{contains, delone_diagnostics, generate, Preset};
use quasipoly_core::render::{render_svg, Scene};
use quasipoly_core::CycInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const MODULI: [u64; 8] = [3, 4, 5, 7, 8, 9, 11, 12];

fn criterion_1() -> Outcome {
    let expected: [(u64, &[u64]); 9] = [
        (3, &[8, 12]),
        (4, &[8, 12]),
        (5, &[8, 10, 12, 20]),
        (8, &[8, 12, 16]),
        (12, &[8, 12, 24]),
        (7, &[8, 12, 14, 28]),
        (9, &[8, 12, 18, 36]),
        (11, &[8, 12, 22, 44]),
        (10, &[8, 10, 12, 20]),
    ];
    for (n, want) in expected {
        let got = admissible_edge_numbers(n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("n = {n}: got {got:?}, want {want:?}"))?;
    }
    Ok(format!("{} tables match exactly", expected.len()))
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    let mut mismatches = 0;
    for n in 3..=150u64 {
        for m in (8..=600u64).step_by(2) {
            cases += 1;
            if decide_vi(n, m) != decide_vii(n, m) {
                mismatches += 1;
            }
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches in {cases} cases"))?;
    Ok(format!("{cases} cases, 0 mismatches"))
}

fn criterion_3() -> Outcome {
    let spec = Preset::Ttt5.spec();
    let e = construct_u_polygon_in_model_set(&spec, 20).map_err(|e| e.to_string())?;
    let p = &e.placed.polygon;
    let u = &e.placed.directions;
    ensure(p.len() == 20, || format!("{} edges", p.len()))?;
    ensure(is_u_polygon(p, u), || "not a U-polygon".into())?;
    let class = u_class(p, u).map_err(|e| e.to_string())?;
    ensure(class == 10 && u.len() == 10, || format!("class {class}, |U| = {}", u.len()))?;
    for v in p.vertices() {
        ensure(contains(&spec, v).map_err(|e| e.to_string())?, || format!("{v} outside"))?;
    }
    let patch = generate(&spec, 1.15 * p.embed().iter().map(|v| v[0].hypot(v[1])).fold(0.0, f64::max))
        .map_err(|e| e.to_string())?;
    let scene = Scene {
        points: patch.embedded(),
        polygon: p.embed(),
        directions: u
            .iter()
            .map(|d| (d.unit(), format!("{:.1}°", d.angle().to_degrees())))
            .collect(),
        anchor: 0,
        title: Some("class-10 icosagon, n = 5".into()),
    };
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("icosagon.svg");
    std::fs::write(&path, render_svg(&scene)).map_err(|e| e.to_string())?;
    Ok(format!(
        "20 edges, class 10 = |U|, 20/20 vertices in window, k = {}, svg at {}",
        e.homothety.k,
        path.display()
    ))
}

fn criterion_4() -> Outcome {
    let mut built = 0;
    let mut refused = 0;
    for n in MODULI {
        let ok = admissible_edge_numbers(n).map_err(|e| e.to_string())?;
        for m in (8..=4 * n + 4).step_by(2) {
            let r = construct_u_polygon_ring(n, m);
            if ok.contains(&m) {
                let u = r.map_err(|e| format!("n = {n}, m = {m}: {e}"))?;
                ensure(u.polygon.len() as u64 == m && u.class >= 4, || {
                    format!("n = {n}, m = {m}: {} edges, class {}", u.polygon.len(), u.class)
                })?;
                built += 1;
            } else {
                ensure(matches!(r, Err(ConstructError::Inadmissible { .. })), || {
                    format!("n = {n}, m = {m}: expected inadmissibility error")
                })?;
                refused += 1;
            }
        }
    }
    Ok(format!("{built} polygons verified, {refused} inadmissible pairs refused"))
}

fn criterion_5() -> Outcome {
    let mut worst_q: f64 = 0.0;
    let mut worst_id: f64 = 0.0;
    for m in [8u64, 10, 12, 16, 20, 24] {
        let p = quasipoly_core::construct::regular_polygon_exact(m, m).map_err(|e| e.to_string())?;
        let e = edge_directions(&p);
        let q = cross_ratio_of_directions(&[e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()])
            .map_err(|e| e.to_string())?;
        let closed = consecutive_edge_cross_ratio_regular(m).map_err(|e| e.to_string())?;
        let c = 2.0 * (4.0 * PI / m as f64).cos();
        worst_q = worst_q.max((q - closed).abs());
        worst_id = worst_id.max((q / (q - 1.0) - 2.0 - c).abs());
    }
    ensure(worst_q <= 1e-9, || format!("closed form off by {worst_q:e}"))?;
    ensure(worst_id <= 1e-12, || format!("identity off by {worst_id:e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_rel: f64 = 0.0;
    let ds: Vec<Direction> = (0..4)
        .map(|j| Direction::new(CycInt::zeta_pow(20, j).unwrap()).unwrap())
        .collect();
    let q = cross_ratio_of_directions(&[ds[0].clone(), ds[1].clone(), ds[2].clone(), ds[3].clone()])
        .map_err(|e| e.to_string())?;
    let mut maps = 0;
    while maps < 100 {
        let a: [[f64; 2]; 2] = [
            [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
            [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
        ];
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det.abs() < 1e-3 {
            continue;
        }
        maps += 1;
        let v = [0, 1, 2, 3].map(|i| {
            let [x, y] = ds[i].unit();
            [a[0][0] * x + a[0][1] * y, a[1][0] * x + a[1][1] * y]
        });
        let q2 = cross_ratio_of_vectors(v).map_err(|e| e.to_string())?;
        worst_rel = worst_rel.max((q2 - q).abs() / q.abs());
    }
    ensure(worst_rel <= 1e-7, || format!("GL(2) relative error {worst_rel:e}"))?;
    Ok(format!(
        "max |q - closed form| = {worst_q:.1e}, max identity error = {worst_id:.1e}, GL(2) max rel error = {worst_rel:.1e} over 100 maps"
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut directions = 0;
    for n in MODULI {
        for m in admissible_edge_numbers(n).map_err(|e| e.to_string())? {
            let u = construct_u_polygon_ring(n, m).map_err(|e| e.to_string())?;
            let applied = check_alternate_split(&u.polygon, &u.directions)
                .map_err(|e| format!("n = {n}, m = {m}: {e}"))?;
            ensure(applied, || format!("n = {n}, m = {m}: not a U-polygon"))?;
            checked += 1;
            directions += u.directions.len();
        }
    }
    Ok(format!("{checked} polygons, {directions} direction tables, all key-wise equal"))
}

fn random_convex_octagon(rng: &mut ChaCha8Rng) -> FloatPolygon {
    loop {
        let mut t: Vec<f64> = (0..8).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        t.sort_by(f64::total_cmp);
        let gaps_ok = (0..8).all(|i| {
            let next = if i == 7 { t[0] + 2.0 * PI } else { t[i + 1] };
            next - t[i] > 0.1
        });
        if !gaps_ok {
            continue;
        }
        let (sx, sy, sh) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5));
        let (ox, oy) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let vs = t
            .iter()
            .map(|a| [sx * a.cos() + sh * a.sin() + ox, sy * a.sin() + oy])
            .collect();
        return FloatPolygon::new(vs).unwrap();
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = random_convex_octagon(&mut rng);
        let run = darboux_iterate(&p, 50).map_err(|e| e.to_string())?;
        let r = affine_regularity_residual(run.last()).map_err(|e| e.to_string())?;
        worst = worst.max(r);
    }
    ensure(worst < 1e-6, || format!("worst residual {worst:e}"))?;

    let e = construct_u_polygon_in_model_set(&Preset::Ttt5.spec(), 20).map_err(|e| e.to_string())?;
    let p0 = FloatPolygon::new(e.placed.polygon.embed()).map_err(|e| e.to_string())?;
    let angles = e.placed.directions.angles();
    let run = darboux_iterate(&p0, 25).map_err(|e| e.to_string())?;
    for (i, snap) in run.snapshots.iter().enumerate() {
        ensure(edges_within_directions(snap, &angles, 1e-7), || {
            format!("icosagon iterate P_{} leaves U", 2 * i)
        })?;
    }
    Ok(format!(
        "20 octagons, worst residual after 50 double steps {worst:.1e}; icosagon edges stay in U for P_0..P_50"
    ))
}

/// `(preset, point count, min distance, hole radius)` from the first verified run.
const FROZEN: [(Preset, usize, f64, f64); 3] = [
    (Preset::Ttt5, 4558, 0.6180339887498913, 0.8232120752067339),
    (Preset::Ab8, 3196, 0.7653668647301765, 1.1919285132751372),
    (Preset::Shield12, 4232, 0.5176380902050391, 0.6944147855016787),
];

fn criterion_8() -> Outcome {
    let mut parts = Vec::new();
    for (preset, count, min_d, hole) in FROZEN {
        let spec = preset.spec();
        let a = generate(&spec, 30.0).map_err(|e| e.to_string())?;
        let b = generate(&spec, 30.0).map_err(|e| e.to_string())?;
        let ja = serde_json::to_vec(&a).map_err(|e| e.to_string())?;
        let jb = serde_json::to_vec(&b).map_err(|e| e.to_string())?;
        ensure(ja == jb, || format!("{}: output not byte-stable", preset.name()))?;
        ensure(a.len() == count, || format!("{}: {} points, frozen {count}", preset.name(), a.len()))?;
        let d = delone_diagnostics(&a, 30.0).map_err(|e| e.to_string())?;
        ensure(d.min_distance > 0.2 && d.hole_radius < 5.0, || {
            format!("{}: {d:?} outside bounds", preset.name())
        })?;
        ensure((d.min_distance - min_d).abs() < 1e-9, || {
            format!("{}: min distance {} drifted from {min_d}", preset.name(), d.min_distance)
        })?;
        ensure((d.hole_radius - hole).abs() < 1e-6, || {
            format!("{}: hole radius {} drifted from {hole}", preset.name(), d.hole_radius)
        })?;
        parts.push(format!(
            "{} {} pts min {:.4} hole {:.4}",
            preset.name(),
            a.len(),
            d.min_distance,
            d.hole_radius
        ));
    }
    Ok(parts.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("admissibility tables", criterion_1),
        ("decision equivalence sweep", criterion_2),
        ("icosagon in the n = 5 preset", criterion_3),
        ("construction matrix", criterion_4),
        ("cross-ratio closed form", criterion_5),
        ("X-ray non-uniqueness", criterion_6),
        ("Darboux convergence", criterion_7),
        ("model-set sanity", criterion_8),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let ms = t.elapsed().as_millis();
        match r {
            Ok(detail) => println!("criterion {} ({name}): PASS [{ms} ms] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{ms} ms] {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
