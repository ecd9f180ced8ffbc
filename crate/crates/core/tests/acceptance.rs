mod common;

use std::collections::BTreeMap;
use std::fs;
use std::time::{Duration, Instant};

use common::{bin, brute_force_cycles, grid, PENTOMINOES, TETROMINOES};
use hingefold::bg::{mutual_chart, verify_chart};
use hingefold::chain::{dissect_pair, fold_chain, FoldResult};
use hingefold::figure::{figures_equal, verify_configuration, Configuration, HingedFigure, Target};
use hingefold::geom::{rat, to_f64, Point2, Rational, SimplePolygon};
use hingefold::io::{rational_from_json, rational_to_json, HdjDocument};
use hingefold::kinematics::{default_cut, extract_pose, forward_kinematics, hinge_gap, max_vertex_deviation, sample_motion};
use hingefold::polyomino::{random_polyomino, Polyomino};
use hingefold::samples::{load_sample_shape, sample_names, DUDENEY_HDJ};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn corpus() -> Vec<(String, Polyomino)> {
    let mut out = Vec::new();
    for (name, g) in TETROMINOES {
        out.push((format!("tetromino {name}"), grid(g)));
    }
    for (name, g) in PENTOMINOES {
        out.push((format!("pentomino {name}"), grid(g)));
    }
    for n in 1..=12 {
        for seed in 0..25 {
            out.push((format!("random n={n} seed={seed}"), random_polyomino(n, seed).unwrap()));
        }
    }
    out
}

fn accepted(f: &HingedFigure, c: &Configuration, p: &Polyomino) -> bool {
    verify_configuration(f, c, &Target::Polyomino(p.clone())).map(|r| r.accepted).unwrap_or(false)
}

fn timed_fold(p: &Polyomino) -> (FoldResult, bool, Duration) {
    let t = Instant::now();
    let r = fold_chain(p);
    let ok = accepted(&r.figure, &r.config, p);
    (r, ok, t.elapsed())
}

fn piece_count_law(shapes: &[(String, Polyomino)]) -> Outcome {
    let mut worst = Duration::ZERO;
    for (name, p) in shapes {
        let (r, ok, dt) = timed_fold(p);
        worst = worst.max(dt);
        if r.figure.piece_count() != 2 * p.cell_count() || !ok {
            return outcome(false, format!("{name}: {} pieces, accepted={ok}", r.figure.piece_count()));
        }
        if dt >= Duration::from_secs(1) {
            return outcome(false, format!("{name}: {dt:?}"));
        }
    }
    outcome(true, format!("{} shapes, slowest {worst:?}", shapes.len()))
}

fn universality(shapes: &[(String, Polyomino)]) -> Outcome {
    let mut by_n: BTreeMap<usize, Vec<HingedFigure>> = BTreeMap::new();
    for (_, p) in shapes {
        by_n.entry(p.cell_count()).or_default().push(fold_chain(p).figure);
    }
    let mut pairs = 0;
    for (n, figs) in &by_n {
        for i in 0..figs.len() {
            for j in i + 1..figs.len() {
                pairs += 1;
                if !figures_equal(&figs[i], &figs[j]) {
                    return outcome(false, format!("n={n}: figures {i} and {j} differ"));
                }
            }
        }
    }
    outcome(true, format!("{pairs} equal-n pairs"))
}

fn pairwise() -> Outcome {
    let mut count = 0;
    for (i, (name_a, grid_a)) in TETROMINOES.iter().enumerate() {
        for (name_b, grid_b) in &TETROMINOES[i + 1..] {
            let (a, b) = (grid(grid_a), grid(grid_b));
            let ok = match dissect_pair(&a, &b) {
                Ok(d) => accepted(&d.figure, &d.config_a, &a) && accepted(&d.figure, &d.config_b, &b),
                Err(_) => false,
            };
            if !ok {
                return outcome(false, format!("{name_a} / {name_b}"));
            }
            count += 1;
        }
    }
    outcome(count == 10, format!("{count} tetromino pairs"))
}

fn big_chains() -> Outcome {
    let mut shapes: Vec<(String, Polyomino)> =
        (0..20).map(|s| (format!("random 64-omino seed={s}"), random_polyomino(64, 1000 + s).unwrap())).collect();
    for name in sample_names() {
        shapes.push((format!("glyph {name}"), load_sample_shape(name).unwrap()));
    }
    let mut worst = Duration::ZERO;
    for (name, p) in &shapes {
        let (r, ok, dt) = timed_fold(p);
        worst = worst.max(dt);
        if r.figure.piece_count() != 128 || !ok || dt >= Duration::from_secs(2) {
            return outcome(false, format!("{name}: {} pieces, accepted={ok}, {dt:?}", r.figure.piece_count()));
        }
    }
    outcome(true, format!("{} shapes, slowest {worst:?}", shapes.len()))
}

fn shift(v: &mut Value, delta: i64) {
    *v = rational_to_json(&(rational_from_json(v).unwrap() + rat(delta)));
}

fn negated(v: &Value) -> Value {
    rational_to_json(&-rational_from_json(v).unwrap())
}

fn pinned_points_coincide(doc: &HdjDocument, hinge: usize) -> bool {
    let Configuration::Exact(m) = &doc.configurations[0].config else { return false };
    let h = doc.figure.hinges()[hinge];
    let a = m[h.piece_a].apply(doc.figure.pieces()[h.piece_a].vertex(h.vertex_a));
    let b = m[h.piece_b].apply(doc.figure.pieces()[h.piece_b].vertex(h.vertex_b));
    a == b
}

fn mutation_rejection() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut kinds = [0usize; 3];
    let mut skipped = 0;
    let mut done = 0;
    while done < 100 {
        let p = random_polyomino(rng.gen_range(2..=10), rng.gen()).unwrap();
        let cells = dir.path().join("base.txt");
        let base = dir.path().join("base.hdj");
        fs::write(&cells, p.to_grid()).unwrap();
        let st = bin().args(["fold", "--in", cells.to_str().unwrap(), "--out", base.to_str().unwrap()]).output().unwrap().status;
        if !st.success() {
            return outcome(false, format!("fold exited {st}"));
        }
        let text = fs::read_to_string(&base).unwrap();
        let doc = HdjDocument::from_json(&text).unwrap();
        let mut v: Value = serde_json::from_str(&text).unwrap();
        let kind = rng.gen_range(0..3);
        match kind {
            0 => {
                let i = rng.gen_range(0..doc.figure.piece_count());
                let key = if rng.gen() { "tx" } else { "ty" };
                shift(&mut v["configurations"][0]["placements"][i][key], 1);
            }
            1 => {
                let i = rng.gen_range(0..doc.figure.piece_count());
                let pl = &mut v["configurations"][0]["placements"][i];
                let (c, s) = (pl["cos"].clone(), pl["sin"].clone());
                pl["cos"] = negated(&s);
                pl["sin"] = c;
            }
            _ => {
                let h = rng.gen_range(0..doc.figure.hinges().len());
                let t = v["figure"]["hinges"][h].as_array_mut().unwrap();
                t.swap(1, 3);
                let mutated = HdjDocument::from_json(&v.to_string()).unwrap();
                if pinned_points_coincide(&mutated, h) {
                    skipped += 1;
                    continue;
                }
            }
        }
        let path = dir.path().join("mutated.hdj");
        fs::write(&path, v.to_string()).unwrap();
        let code = bin().args(["verify", path.to_str().unwrap()]).output().unwrap().status.code();
        if code != Some(1) {
            return outcome(false, format!("mutation kind {kind} gave exit {code:?}"));
        }
        kinds[kind] += 1;
        done += 1;
    }
    outcome(
        true,
        format!(
            "100 mutations exit 1 (translate {}, quarter turn {}, hinge swap {}; {skipped} geometry-preserving swaps excluded)",
            kinds[0], kinds[1], kinds[2]
        ),
    )
}

fn oracle() -> Outcome {
    for g in ["#", "##", "#\n#"] {
        let p = grid(g);
        let cycles = brute_force_cycles(&p);
        if !cycles.contains(&fold_chain(&p).triangles) {
            return outcome(false, format!("{g:?} not in the enumerated set"));
        }
    }
    outcome(true, "n=1 and both n=2 orientations found in exhaustive enumeration")
}

fn kinematics() -> Outcome {
    let pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    let (mut dev, mut gap) = (0f64, 0f64);
    for (i, j) in pairs {
        let d = dissect_pair(&grid(TETROMINOES[i].1), &grid(TETROMINOES[j].1)).unwrap();
        let cut = default_cut(&d.figure);
        let frames = sample_motion(&d.figure, &d.config_a, &d.config_b, 60, cut).unwrap();
        if frames.len() != 60 {
            return outcome(false, "frame count");
        }
        for (c, end) in [(&d.config_a, &frames[0]), (&d.config_b, &frames[59])] {
            let fk = forward_kinematics(&d.figure, &extract_pose(&d.figure, c, cut).unwrap());
            dev = dev.max(max_vertex_deviation(&d.figure, &fk, &c.float_placements()));
            dev = dev.max(max_vertex_deviation(&d.figure, &end.placements, &c.float_placements()));
        }
        for f in &frames {
            gap = gap.max(hinge_gap(&d.figure, &f.placements, Some(cut)));
        }
    }
    outcome(dev <= 1e-9 && gap <= 1e-9, format!("5 pairs x 60 frames, endpoint deviation {dev:.2e}, hinge gap {gap:.2e}"))
}

fn star_polygon(rng: &mut ChaCha8Rng) -> SimplePolygon {
    loop {
        let k = rng.gen_range(4..=8);
        let mut pts: Vec<(i64, i64)> = (0..k).map(|_| (rng.gen_range(-9..=9), rng.gen_range(-9..=9))).collect();
        pts.retain(|&(x, y)| (x, y) != (0, 0));
        pts.sort_by(|a, b| (a.1 as f64).atan2(a.0 as f64).total_cmp(&(b.1 as f64).atan2(b.0 as f64)));
        pts.dedup_by(|a, b| a.0 * b.1 == a.1 * b.0 && a.0 * b.0 + a.1 * b.1 > 0);
        let n = pts.len();
        if n < 3 || (0..n).any(|i| pts[i].0 * pts[(i + 1) % n].1 - pts[i].1 * pts[(i + 1) % n].0 <= 0) {
            continue;
        }
        if let Ok(p) = SimplePolygon::from_ints(&pts) {
            return p;
        }
    }
}

fn scaled_x(p: &SimplePolygon, k: &Rational) -> SimplePolygon {
    SimplePolygon::new(p.vertices().iter().map(|v| Point2::new(&v.x * k, v.y.clone())).collect()).unwrap()
}

fn width_for(area: &Rational) -> Rational {
    rat(to_f64(area).sqrt().floor().max(1.0) as i64)
}

fn bolyai_gerwien() -> Outcome {
    let mut cases = vec![(
        SimplePolygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap(),
        SimplePolygon::from_ints(&[(0, 0), (4, 0), (0, 2)]).unwrap(),
    )];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let a = star_polygon(&mut rng);
        let b = star_polygon(&mut rng);
        let k = a.area() / b.area();
        cases.push((a, scaled_x(&b, &k)));
    }
    let (mut worst, mut pieces) = (Duration::ZERO, 0);
    for (i, (a, b)) in cases.iter().enumerate() {
        let t = Instant::now();
        let chart = match mutual_chart(a, b, &width_for(&a.area())) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("case {i}: {e}")),
        };
        let report = verify_chart(&chart, 1e-9);
        let dt = t.elapsed();
        worst = worst.max(dt);
        pieces = pieces.max(chart.pieces.len());
        let sum = chart.pieces.iter().fold(Rational::zero(), |s, p| s + p.area());
        if !report.accepted || sum != a.area() || dt >= Duration::from_secs(5) {
            return outcome(false, format!("case {i}: accepted={}, exact sum={}, {dt:?}", report.accepted, sum == a.area()));
        }
    }
    outcome(true, format!("{} pairs, slowest {worst:?}, at most {pieces} pieces", cases.len()))
}

fn dudeney() -> Outcome {
    let doc = HdjDocument::from_json(DUDENEY_HDJ).unwrap();
    if doc.figure.piece_count() != 4 {
        return outcome(false, format!("{} pieces", doc.figure.piece_count()));
    }
    for (i, c) in doc.configurations.iter().enumerate() {
        let target = doc.target_for(i).unwrap();
        let report = verify_configuration(&doc.figure, &c.config.to_approx(1e-6), target).unwrap();
        if !report.accepted {
            return outcome(false, format!("{} rejected", c.name));
        }
    }
    let Some(Target::Polygon(tri)) = doc.targets.iter().find(|t| t.name == "triangle").map(|t| &t.target) else {
        return outcome(false, "no triangle target");
    };
    let v = tri.to_f64();
    let area = to_f64(&tri.area());
    let analytic = (4.0 * area / 3f64.sqrt()).sqrt();
    let worst = (0..3).map(|i| ((v[(i + 1) % 3].x - v[i].x).hypot(v[(i + 1) % 3].y - v[i].y) - analytic).abs()).fold(0.0, f64::max);
    outcome(worst <= 1e-6, format!("4 pieces, area {area:.6}, side {analytic:.6}, deviation {worst:.1e}"))
}

fn main() {
    let shapes = corpus();
    let checks: Vec<Check> = vec![
        ("1 piece-count law", Box::new(|| piece_count_law(&shapes))),
        ("2 universality", Box::new(|| universality(&shapes))),
        ("3 pairwise dissection", Box::new(pairwise)),
        ("4 128-piece chains", Box::new(big_chains)),
        ("5 mutation rejection", Box::new(mutation_rejection)),
        ("6 oracle equivalence", Box::new(oracle)),
        ("7 kinematics fidelity", Box::new(kinematics)),
        ("8 bolyai-gerwien", Box::new(bolyai_gerwien)),
        ("9 dudeney asset", Box::new(dudeney)),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let o = check();
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
