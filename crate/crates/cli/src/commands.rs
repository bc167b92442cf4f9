use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};
use quasipoly_core::construct::{
    construct_u_polygon_in_model_set_with, construct_u_polygon_ring, ConstructError,
};
use quasipoly_core::fields::{admissible_edge_numbers, canonicalize, fired_clause};
use quasipoly_core::geometry::{
    affine_regularity_residual, check_alternate_split, consecutive_edge_cross_ratio_regular,
    cross_ratio, cross_ratio_exact, cross_ratio_of_directions, cross_ratio_of_vectors,
    darboux_iterate, edge_directions, is_u_polygon, is_u_polygon_float, u_class, xray, ExtReal,
};
use quasipoly_core::modelset::{contains, generate, generate_with_budget};
use quasipoly_core::render::{render_svg, Scene};
use quasipoly_core::{
    Direction, FloatPolygon, GeometryError, ModelSetError, ModelSetSpec, PointSet, Preset, Window,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyfile::PolygonFile;
use crate::{Cli, Command, ConstructArgs, CrossRatioArgs, DarbouxArgs, Failure, GenerateArgs, ModelSetArgs};

type Res = Result<(), Failure>;

/// Candidate budget for the background patch of a rendered polygon.
const PATCH_BUDGET: u64 = 5_000_000;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(anyhow!(msg.into()))
}

fn modelset_failure(e: ModelSetError) -> Failure {
    match e {
        ModelSetError::BudgetExceeded { .. } => Failure::Infeasible(e.into()),
        e => Failure::Invalid(e.into()),
    }
}

fn construct_failure(e: ConstructError) -> Failure {
    match e {
        ConstructError::Inadmissible { .. } => {
            println!("admissible: false");
            println!("reason: {e}");
            Failure::Negative
        }
        ConstructError::PisotBudget { .. }
        | ConstructError::KMaxExhausted { .. }
        | ConstructError::NoTranslate { .. }
        | ConstructError::ModelSet(ModelSetError::BudgetExceeded { .. }) => Failure::Infeasible(e.into()),
        e => Failure::Invalid(e.into()),
    }
}

fn write(path: &Path, contents: &str) -> Res {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    Ok(fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?)
}

fn read_polygon(path: &Path) -> Result<PolygonFile, Failure> {
    let text = read(path)?;
    Ok(PolygonFile::from_json(&text).with_context(|| format!("in {}", path.display()))?)
}

pub fn run(cli: &Cli) -> Res {
    match &cli.command {
        Command::Decide { n, m } => decide(*n, *m),
        Command::Admissible { n } => {
            let a = admissible_edge_numbers(*n)?;
            println!("{}", serde_json::to_string(&a)?);
            Ok(())
        }
        Command::Generate(a) => generate_cmd(a),
        Command::Construct(a) => construct(a),
        Command::Verify { input } => verify(input),
        Command::Xray { input, out_dir } => xray_cmd(input, out_dir.as_deref()),
        Command::Darboux(a) => darboux(a, cli.seed),
        Command::Crossratio(a) => crossratio(a, cli.tolerance),
        Command::Render { points, polygon, out } => render(points.as_deref(), polygon.as_deref(), out),
    }
}

fn decide(n: u64, m: u64) -> Res {
    match fired_clause(n, m)? {
        Some(c) => {
            println!("admissible: true");
            println!("clause: {c}");
            Ok(())
        }
        None => {
            println!("admissible: false");
            println!("clause: none (m ∉ {{8, 12}}, m ∤ {}, and m is not 4d for an odd d | n)", 2 * n);
            Err(Failure::Negative)
        }
    }
}

/// Resolves `--preset`, `--n` and `--window` into a modulus and an optional spec.
fn resolve(a: &ModelSetArgs) -> Result<(Option<u64>, Option<ModelSetSpec>), Failure> {
    let window = a
        .window
        .as_deref()
        .map(Window::parse)
        .transpose()
        .map_err(modelset_failure)?;
    let preset = match a.preset.as_deref() {
        Some(s) => Some(Preset::parse(s).ok_or_else(|| {
            let names: Vec<&str> = Preset::ALL.iter().map(|p| p.name()).collect();
            invalid(format!("unknown preset {s:?}, expected one of {}", names.join(", ")))
        })?),
        None => None,
    };
    if let (Some(p), Some(n)) = (preset, a.n) {
        if canonicalize(n) != p.n() {
            return Err(invalid(format!("--n {n} does not match preset {} (n = {})", p.name(), p.n())));
        }
    }
    let n = preset.map(Preset::n).or(a.n);
    let spec = match (preset, window, n) {
        (Some(p), None, _) => Some(p.spec()),
        (_, Some(w), Some(n)) => Some(ModelSetSpec::new(n, w).map_err(modelset_failure)?),
        (_, Some(_), None) => return Err(invalid("--window needs --n or --preset")),
        (None, None, _) => None,
    };
    Ok((n, spec))
}

fn generate_cmd(a: &GenerateArgs) -> Res {
    let (_, spec) = resolve(&a.model)?;
    let spec = spec.ok_or_else(|| invalid("generate needs --preset, or --n with --window"))?;
    let ps = generate(&spec, a.radius).map_err(modelset_failure)?;
    let mut json = serde_json::to_string(&ps)?;
    json.push('\n');
    match &a.out {
        Some(p) => write(p, &json)?,
        None => print!("{json}"),
    }
    if let Some(p) = &a.csv {
        write(p, &ps.to_csv())?;
    }
    if let Some(p) = &a.svg {
        let scene = Scene {
            points: ps.embedded(),
            title: Some(format!("n = {}, window {}, radius {}", spec.n(), spec.window(), a.radius)),
            ..Scene::default()
        };
        write(p, &render_svg(&scene))?;
    }
    eprintln!("{} points", ps.len());
    Ok(())
}

fn construct(a: &ConstructArgs) -> Res {
    let (n, spec) = resolve(&a.model)?;
    let file = match spec {
        Some(spec) => {
            let e = construct_u_polygon_in_model_set_with(&spec, a.m, a.k_max).map_err(construct_failure)?;
            PolygonFile {
                polygon: e.placed.polygon,
                directions: e.placed.directions,
                class: Some(e.placed.class),
                homothety: Some(e.homothety),
                spec: Some(spec),
            }
        }
        None => {
            let n = n.ok_or_else(|| invalid("construct needs --n or --preset"))?;
            let u = construct_u_polygon_ring(n, a.m).map_err(construct_failure)?;
            PolygonFile {
                polygon: u.polygon,
                directions: u.directions,
                class: Some(u.class),
                homothety: None,
                spec: None,
            }
        }
    };
    let json = file.to_json()?;
    match &a.out {
        Some(p) => write(p, &json)?,
        None => print!("{json}"),
    }
    if let Some(p) = &a.svg {
        write(p, &render_svg(&polygon_scene(&file, None)))?;
    }
    let k = file.homothety.as_ref().map_or(String::from("none"), |h| h.k.to_string());
    eprintln!(
        "n = {}, m = {}, class = {}, |U| = {}, k = {k}",
        file.polygon.modulus(),
        file.polygon.len(),
        file.class.unwrap_or(0),
        file.directions.len()
    );
    Ok(())
}

fn verify(input: &Path) -> Res {
    let f = read_polygon(input)?;
    if f.directions.is_empty() {
        return Err(invalid("polygon file lists no directions"));
    }
    let (p, u) = (&f.polygon, &f.directions);
    let ok = is_u_polygon(p, u);
    println!("is_u_polygon: {ok}");
    println!("edges: {}", p.len());
    println!("directions: {}", u.len());
    let mut fine = ok;
    if ok {
        let class = u_class(p, u)?;
        println!("class: {class}");
        if let Some(stored) = f.class {
            if stored != class {
                println!("stored class {stored} differs");
                fine = false;
            }
        }
    }
    if let Some(spec) = &f.spec {
        let mut inside = true;
        for v in p.vertices() {
            inside &= contains(spec, v).map_err(modelset_failure)?;
        }
        println!("in_model_set: {inside}");
        fine &= inside;
    }
    if let Some(h) = &f.homothety {
        println!("homothety: k = {}, valid = {}", h.k, h.is_valid());
        fine &= h.is_valid();
    }
    if fine {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn xray_cmd(input: &Path, out_dir: Option<&Path>) -> Res {
    let f = read_polygon(input)?;
    if let Some(d) = out_dir {
        fs::create_dir_all(d).with_context(|| format!("cannot create {}", d.display()))?;
    }
    for (i, d) in f.directions.iter().enumerate() {
        let t = xray(f.polygon.vertices(), d)?;
        println!(
            "direction {i}: angle {:.6}°, {} lines, {} points",
            d.angle().to_degrees(),
            t.lines().len(),
            t.total()
        );
        match out_dir {
            Some(dir) => write(&dir.join(format!("xray_{i:02}.csv")), &t.to_csv())?,
            None => print!("{}", t.to_csv()),
        }
    }
    match check_alternate_split(&f.polygon, &f.directions) {
        Ok(true) => {
            println!("alternate split: equal X-rays in all {} directions", f.directions.len());
            Ok(())
        }
        Ok(false) => {
            println!("alternate split: not applicable, polygon is not a U-polygon");
            Err(Failure::Negative)
        }
        Err(GeometryError::FalsifiedExpectation(msg)) => {
            println!("alternate split: FALSIFIED: {msg}");
            Err(Failure::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

fn random_polygon(m: usize, seed: u64) -> FloatPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angles: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    let vertices = angles
        .into_iter()
        .map(|t| {
            let r = rng.gen_range(0.7..1.3);
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    FloatPolygon::new(vertices).expect("m ≥ 3")
}

fn diameter(p: &FloatPolygon) -> f64 {
    let v = &p.vertices;
    let mut d: f64 = 0.0;
    for (i, a) in v.iter().enumerate() {
        for b in &v[i + 1..] {
            d = d.max((a[0] - b[0]).hypot(a[1] - b[1]));
        }
    }
    d
}

fn darboux(a: &DarbouxArgs, seed: u64) -> Res {
    let (p0, angles) = match (&a.input, a.random) {
        (Some(path), _) => {
            let f = read_polygon(path)?;
            (FloatPolygon::new(f.polygon.embed())?, Some(f.directions.angles()))
        }
        (None, Some(m)) => (random_polygon(m as usize, seed), None),
        (None, None) => return Err(invalid("darboux needs --input or --random")),
    };
    let run = darboux_iterate(&p0, a.k)?;
    println!("step,residual,relative{}", if angles.is_some() { ",u_polygon" } else { "" });
    for (j, s) in run.snapshots.iter().enumerate() {
        let r = affine_regularity_residual(s)?;
        let rel = r / diameter(s);
        match &angles {
            Some(u) => println!("{},{r:.6e},{rel:.6e},{}", 2 * j, is_u_polygon_float(s, u, a.angle_tolerance)),
            None => println!("{},{r:.6e},{rel:.6e}", 2 * j),
        }
    }
    Ok(())
}

fn parse_slope(s: &str) -> Result<ExtReal, Failure> {
    match s.trim() {
        "inf" | "∞" | "-inf" => Ok(ExtReal::Infinity),
        t => {
            let v: f64 = t.parse().map_err(|_| invalid(format!("bad slope {t:?}")))?;
            if v.is_finite() {
                Ok(ExtReal::Finite(v))
            } else {
                Err(invalid(format!("bad slope {t:?}")))
            }
        }
    }
}

fn print_q(q: f64) {
    println!("q = {q:.15}");
    if q != 1.0 {
        println!("q/(q-1) - 2 = {:.15}", q / (q - 1.0) - 2.0);
    }
}

fn crossratio(a: &CrossRatioArgs, tol: f64) -> Res {
    let given = [a.slopes.is_some(), a.m.is_some(), a.input.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(invalid("give exactly one of --slopes, --m, --input"));
    }
    if let Some(s) = &a.slopes {
        let t: Vec<ExtReal> = s.iter().map(|x| parse_slope(x)).collect::<Result<_, _>>()?;
        if t.len() != 4 {
            return Err(invalid(format!("--slopes takes 4 values, got {}", t.len())));
        }
        print_q(cross_ratio([t[0], t[1], t[2], t[3]])?);
        return Ok(());
    }
    if let Some(m) = a.m {
        let q = consecutive_edge_cross_ratio_regular(m)?;
        // the same quantity from the edge vectors of an actual regular m-gon
        let edge = |j: u64| {
            let t = PI * (2 * j + 1) as f64 / m as f64 + PI / 2.0;
            [t.cos(), t.sin()]
        };
        let q_vec = cross_ratio_of_vectors([edge(0), edge(1), edge(2), edge(3)])?;
        print_q(q);
        let lhs = q / (q - 1.0) - 2.0;
        let rhs = 2.0 * (4.0 * PI / m as f64).cos();
        println!("2cos(4π/m) = {rhs:.15}");
        println!("q from edge vectors = {q_vec:.15}");
        let ok = (lhs - rhs).abs() <= tol * rhs.abs().max(1.0) && (q - q_vec).abs() <= tol * q.abs().max(1.0);
        println!("identity holds: {ok}");
        return if ok { Ok(()) } else { Err(Failure::Negative) };
    }
    let f = read_polygon(a.input.as_deref().expect("checked above"))?;
    let edges = edge_directions(&f.polygon);
    let k = edges.len();
    let ds: [Direction; 4] = std::array::from_fn(|j| edges[(a.at + j) % k].clone());
    let q = cross_ratio_of_directions(&ds)?;
    let (num, den) = cross_ratio_exact(&ds)?;
    print_q(q);
    println!("exact numerator = {num}");
    println!("exact denominator = {den}");
    Ok(())
}

/// Polygon drawn boldly over a faint patch with one line per direction.
fn polygon_scene(f: &PolygonFile, points: Option<&PointSet>) -> Scene {
    let [tx, ty] = f.spec.as_ref().map_or([0.0, 0.0], |s| s.translate().embed());
    let verts: Vec<[f64; 2]> = f.polygon.embed();
    let reach = verts.iter().map(|v| v[0].hypot(v[1])).fold(0.0, f64::max);
    let patch = match (points, &f.spec) {
        (Some(ps), _) => ps.embedded(),
        (None, Some(spec)) => match generate_with_budget(spec, 1.15 * reach, PATCH_BUDGET) {
            Ok(ps) => ps.embedded(),
            Err(e) => {
                eprintln!("note: background patch skipped ({e})");
                Vec::new()
            }
        },
        (None, None) => Vec::new(),
    };
    Scene {
        points: patch,
        polygon: verts.iter().map(|v| [v[0] + tx, v[1] + ty]).collect(),
        directions: f
            .directions
            .iter()
            .map(|d| (d.unit(), format!("{:.1}°", d.angle().to_degrees())))
            .collect(),
        anchor: 0,
        title: Some(format!(
            "{}-gon, n = {}, {} directions",
            f.polygon.len(),
            f.polygon.modulus(),
            f.directions.len()
        )),
    }
}

fn render(points: Option<&Path>, polygon: Option<&Path>, out: &Path) -> Res {
    let ps = match points {
        Some(p) => Some(serde_json::from_str::<PointSet>(&read(p)?).with_context(|| format!("in {}", p.display()))?),
        None => None,
    };
    let scene = match (polygon, &ps) {
        (Some(p), _) => polygon_scene(&read_polygon(p)?, ps.as_ref()),
        (None, Some(ps)) => Scene {
            points: ps.embedded(),
            ..Scene::default()
        },
        (None, None) => return Err(invalid("render needs --points and/or --polygon")),
    };
    write(out, &render_svg(&scene))
}
