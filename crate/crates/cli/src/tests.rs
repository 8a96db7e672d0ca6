use std::path::{Path, PathBuf};

use pwa_core::{random, PwaMap, Vector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

use super::run;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

struct Output {
    code: i32,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
}

fn pwa(args: &[&str]) -> Output {
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("pwa").chain(args.iter().copied()),
        &mut stdout,
        &mut stderr,
    );
    Output {
        code,
        stdout,
        stderr,
    }
}

fn ok(args: &[&str]) -> String {
    let out = pwa(args);
    assert!(
        out.code == 0,
        "pwa {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_map(dir: &TempDir, name: &str, p: &PwaMap) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(p).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn example_goldens() {
    for m in ["max", "min"] {
        let file = data(&format!("plane_{m}.json"));
        let points = data("plane_points.txt");
        assert_eq!(
            ok(&["eval", s(&file), "--points", s(&points)]),
            golden(&format!("plane_{m}_eval.txt"))
        );
        assert_eq!(
            ok(&["validate", s(&file)]),
            golden(&format!("plane_{m}_validate.txt"))
        );
        assert_eq!(
            ok(&["to-minmax", s(&file)]),
            golden(&format!("plane_{m}_minmax.json"))
        );
        assert_eq!(
            ok(&["regions", s(&file)]),
            golden(&format!("plane_{m}_regions.csv"))
        );
    }
    assert_eq!(
        ok(&["eval", s(&data("plane_max.json")), "-x", "1/2,3"]),
        "3\n"
    );
    assert_eq!(
        ok(&["eval", s(&data("plane_min.json")), "-x", "1/2,3"]),
        "1/2\n"
    );
}

#[test]
fn inconsistent_map_names_the_pair() {
    let out = pwa(&["validate", s(&data("inconsistent.json"))]);
    assert_eq!(out.code, 1);
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "inconsistent");
    assert_eq!(diag["cells"], serde_json::json!([0, 1]));
    assert_eq!(
        String::from_utf8(out.stderr).unwrap(),
        golden("inconsistent_validate.err")
    );
    let out = pwa(&["validate", s(&data("gap.json"))]);
    assert_eq!(out.code, 1);
}

#[test]
fn exit_codes() {
    let max = data("plane_max.json");
    let min = data("plane_min.json");
    // usage and parse errors
    assert_eq!(pwa(&[]).code, 2);
    assert_eq!(pwa(&["eval"]).code, 2);
    assert_eq!(pwa(&["frobnicate"]).code, 2);
    assert_eq!(pwa(&["eval", s(&max), "-x", "1/0,2"]).code, 2);
    assert_eq!(pwa(&["scale", s(&max), "--by", "abc"]).code, 2);
    assert_eq!(
        pwa(&["eval", s(&data("plane_points.txt")), "-x", "1,2"]).code,
        2
    );
    assert_eq!(pwa(&["validate", "/nonexistent.json"]).code, 2);
    assert_eq!(pwa(&["approx", "--expr", "x^", "--box", "0:1"]).code, 2);
    // semantic failures
    for args in [
        vec!["to-maxaffine", s(&min)],
        vec!["eval", s(&max), "-x", "1,2,3"],
        vec!["to-linear", s(&data("inconsistent.json"))],
        vec![
            "sup",
            s(&max),
            s(&min),
            "--cone",
            s(&data("skew_cone.json")),
        ],
        vec!["approx", "--expr", "1/x", "--box", "0:1", "--res", "2"],
    ] {
        let out = pwa(&args);
        assert_eq!(out.code, 1, "{args:?}");
        let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        assert!(diag["error"].is_string());
    }
    assert_eq!(ok(&["is-convex", s(&max)]), "true\n");
    assert_eq!(ok(&["is-convex", s(&min)]), "false\n");
}

#[test]
fn saved_maps_round_trip_canonically() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for i in 0..6 {
        let p = random::pwa_map(&mut rng, 2, 1 + i % 2, 8);
        let raw = write_map(&dir, "raw.json", &p);
        let once = ok(&["scale", &raw, "--by", "1"]);
        let saved = dir.path().join("once.json");
        std::fs::write(&saved, &once).unwrap();
        assert_eq!(ok(&["scale", s(&saved), "--by", "1"]), once);
        let q: PwaMap = serde_json::from_str(&once).unwrap();
        for x in random::sample_points(&mut rng, 2, 100) {
            assert_eq!(q.eval(&x).unwrap(), p.eval(&x).unwrap());
        }
    }
}

#[test]
fn transformation_outputs_validate() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let p = write_map(&dir, "p.json", &random::pwa_map(&mut rng, 2, 2, 6));
    let q = write_map(&dir, "q.json", &random::pwa_map(&mut rng, 2, 2, 6));
    let r = write_map(&dir, "r.json", &random::pwa_map(&mut rng, 2, 1, 6));
    let out = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let g = out("g.json");
    ok(&["graph", &p, "-o", &g]);
    let runs: Vec<Vec<String>> = vec![
        vec![
            "add".into(),
            p.clone(),
            q.clone(),
            "--alpha".into(),
            "-1/2".into(),
        ],
        vec!["scale".into(), p.clone(), "--by".into(), "3".into()],
        vec!["sup".into(), p.clone(), q.clone()],
        vec![
            "inf".into(),
            p.clone(),
            q.clone(),
            "--cone".into(),
            s(&data("skew_cone.json")).into(),
        ],
        vec!["compose".into(), r.clone(), p.clone()],
        vec![
            "from-graph".into(),
            g.clone(),
            "--dim-in".into(),
            "2".into(),
        ],
        vec![
            "approx".into(),
            "--expr".into(),
            "x1*x2".into(),
            "--box".into(),
            "0,0:1,1".into(),
        ],
    ];
    for (i, args) in runs.iter().enumerate() {
        let target = out(&format!("out{i}.json"));
        let mut args: Vec<&str> = args.iter().map(String::as_str).collect();
        args.extend(["-o", &target]);
        ok(&args);
        assert_eq!(ok(&["validate", &target]), "valid\n", "{args:?}");
    }
    let coords = ok(&["coords", &p]);
    let maps: Vec<PwaMap> = serde_json::from_str(&coords).unwrap();
    assert!(maps.iter().all(|m| m.is_valid().unwrap()));
}

#[test]
fn minmax_forms_evaluate_like_the_map() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let points = dir.path().join("points.txt");
    for i in 0..20 {
        let dim_in = 1 + i % 3;
        let p = random::pwa_map(&mut rng, dim_in, 1 + i % 2, 8);
        let xs: Vec<Vector> = random::sample_points(&mut rng, dim_in, 50);
        let text: String = xs.iter().map(|x| format!("{x}\n")).collect();
        std::fs::write(&points, text).unwrap();
        let map = write_map(&dir, "p.json", &p);
        let form = dir.path().join("form.json");
        ok(&["to-minmax", &map, "-o", s(&form)]);
        assert_eq!(
            ok(&["eval-form", s(&form), "--points", s(&points)]),
            ok(&["eval", &map, "--points", s(&points)])
        );
    }
}

#[test]
fn pwl_and_approximation_commands() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    ok(&[
        "approx",
        "--expr",
        "x^2",
        "--box",
        "0:1",
        "--res",
        "4",
        "-o",
        s(&a),
    ]);
    assert_eq!(
        ok(&["eval", s(&a), "-x", "1/4", "-x", "1/8", "-x", "3"]),
        "1/16\n1/32\n1\n"
    );
    let e = ok(&[
        "error",
        s(&a),
        "--expr",
        "x^2",
        "--box",
        "0:1",
        "--res",
        "4",
    ]);
    let e: pwa_core::Rational = e.trim().parse().unwrap();
    assert!(e.is_positive() && e <= pwa_core::Rational::new(1, 64));
    let d: serde_json::Value = serde_json::from_str(&ok(&["is-pwl", s(&a)])).unwrap();
    assert_eq!(d["decision"], "no");
    let max = data("plane_max.json");
    let marked = dir.path().join("marked.json");
    let d: serde_json::Value =
        serde_json::from_str(&ok(&["is-pwl", s(&max), "--annotate", s(&marked)])).unwrap();
    assert_eq!(d["decision"], "yes");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&marked).unwrap()).unwrap();
    assert_eq!(v["pwl"], true);
    assert_eq!(ok(&["eval", s(&marked), "-x", "-1,2"]), "2\n");
    let form: pwa_core::CanonicalForm =
        serde_json::from_str(&ok(&["to-linear", s(&max), "--kind", "dc"])).unwrap();
    assert!(form.members().all(pwa_core::AffineMap::has_zero_offset));
}

#[test]
fn refine_and_solidify() {
    let partition: pwa_core::covering::Partition =
        serde_json::from_str(&ok(&["refine", s(&data("crossing_lines.json"))])).unwrap();
    assert!(pwa_core::covering::is_partition(&partition.cells, &partition.ambient).unwrap());
    let solid: pwa_core::covering::Covering =
        serde_json::from_str(&ok(&["solidify", s(&data("crossing_lines.json"))])).unwrap();
    assert_eq!(solid.cells.len(), 3);
}
