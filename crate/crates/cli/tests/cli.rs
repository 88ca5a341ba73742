use std::io::Write;
use std::process::{Command, Output, Stdio};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use polykrull::exactnum::Prime;
use polykrull::monoval::DvrSpec;
use polykrull::ringspec::{DefaultRule, RingSpec};
use polykrull_oracle::sample::{ball_spec_at_2, integral_rational, rat};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polykrull"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(args: &[&str], stdin: Option<&str>) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full, stdin);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).unwrap())
}

fn ring_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

const ZX: &str = r#"{"table": {}, "default": "gauss"}"#;
const HALF: &str = r#"{"table": {"2": [{"center": "rat:0", "radius": "1/2"}]}, "default": "none"}"#;

#[test]
fn val_example() {
    let o = run(&["val", "--p", "2", "--center", "rat:0", "--radius", "1", "--poly", "X^2+2*X+8"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn classify_polynomial_ring() {
    let f = ring_file(ZX);
    let (code, r) = report(&["classify", "--ring", f.path().to_str().unwrap()], None);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["ufd"], Value::Bool(true));
    assert_eq!(r["result"]["dedekind"], Value::Bool(false));
    assert_eq!(r["result"]["krull"]["verdict"], "yes");
}

#[test]
fn construct_pipes_into_clgroup() {
    let built = run(&["construct", "--group", "2", "--pool", "2"], None);
    assert_eq!(built.status.code(), Some(0));
    let g = run(&["clgroup"], Some(&stdout(&built)));
    assert_eq!(stdout(&g).trim(), "Z/2");
    let built = run(&["construct", "--group", "6,12,0"], None);
    let g = run(&["clgroup", "--ring", "-"], Some(&stdout(&built)));
    assert_eq!(stdout(&g).trim(), "Z/6 + Z/12 + Z");
}

#[test]
fn report_schema_is_stable() {
    let keys = ["command", "inputs", "result", "assumptions", "status", "error"];
    let cases: [(&[&str], Option<&str>); 6] = [
        (&["val", "--p", "3", "--center", "rat:1", "--radius", "1/2", "--poly", "X-1"], None),
        (&["compare", "--p", "2", "--center", "rat:0", "--radius", "1", "--center", "rat:2", "--radius", "2"], None),
        (&["member", "--poly", "1/2X"], Some(HALF)),
        (&["probe", "--poly", "X", "--bound", "50"], Some(HALF)),
        (&["spectrum"], Some(HALF)),
        (&["val", "--p", "2", "--center", "alg:X^2-2", "--radius", "inf", "--poly", "X"], None),
    ];
    for (args, stdin) in cases {
        let (_, r) = report(args, stdin);
        let got: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(got, keys, "{args:?}");
        assert_eq!(r["command"], args[0]);
        assert!(r["assumptions"].is_array());
        assert_eq!(r["status"] == "ok", r["error"].is_null());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["val", "--p", "2"], None).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    let (code, r) = report(&["val", "--p", "2", "--center", "rat:0", "--radius", "1", "--poly", "X^^"], None);
    assert_eq!((code, r["error"]["name"].as_str()), (2, Some("UsageError")));
    let (code, _) = report(&["compare", "--p", "2", "--center", "rat:0", "--radius", "1"], None);
    assert_eq!(code, 2);
    let (code, r) = report(&["val", "--p", "2", "--center", "alg:X^2-2", "--radius", "inf", "--poly", "X"], None);
    assert_eq!((code, r["error"]["name"].as_str()), (3, Some("AlgebraicAtInfinity")));
    let (code, r) = report(&["val", "--p", "4", "--center", "rat:0", "--radius", "1", "--poly", "X"], None);
    assert_eq!((code, r["error"]["name"].as_str()), (3, Some("NotPrime")));
    let (code, r) = report(&["prime-max", "--p", "2", "--index", "5"], Some(HALF));
    assert_eq!((code, r["error"]["name"].as_str()), (3, Some("IndexOutOfRange")));
    let (code, r) = report(&["clgroup"], Some(r#"{"table": {}, "default": {"center": "rat:0", "radius": "1"}}"#));
    assert_eq!((code, r["error"]["name"].as_str()), (3, Some("NotKrull")));
}

#[test]
fn prime_max_examples() {
    for (q, want) in [("X^2-2", false), ("X^2+X+1", true), ("X-5", true)] {
        let (code, r) = report(&["prime-max", "--poly", q], Some(HALF));
        assert_eq!(code, 0);
        assert_eq!(r["result"]["maximal"], Value::Bool(want), "{q}");
    }
}

#[test]
fn output_is_canonical() {
    let a = r#"{"default": "gauss", "table": {"3": [{"center": "rat:1", "radius": "1"}],
        "2": [{"center": "rat:3", "radius": "2"}, {"center": "rat:0", "radius": "1/2"}]}}"#;
    let b = r#"{"table": {"2": [{"radius": "1/2", "center": "rat:0"}, {"center": "rat:3", "radius": "2"}],
        "3": [{"center": "rat:1", "radius": "1"}]}, "default": "gauss"}"#;
    let first = run(&["--json", "classify"], Some(a));
    let second = run(&["--json", "classify"], Some(b));
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(stdout(&run(&["--json", "classify"], Some(a))), stdout(&first));
}

#[test]
fn spec_text_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let spec = if rng.gen_bool(0.5) {
            ball_spec_at_2(&mut rng)
        } else {
            let p = Prime::new([3, 5, 7][rng.gen_range(0..3)]).unwrap();
            DvrSpec::rational(p, integral_rational(&mut rng, p), rat(rng.gen_range(0..20), rng.gen_range(1..5))).unwrap()
        };
        let center = spec.center().to_string();
        let radius = spec.radius().to_string();
        assert_eq!(DvrSpec::parse(spec.p(), &center, &radius).unwrap(), spec);
    }
}

#[test]
fn ring_files_round_trip_through_the_cli() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..20 {
        let family: Vec<DvrSpec> = (0..rng.gen_range(1..4)).map(|_| ball_spec_at_2(&mut rng)).collect();
        let ring = RingSpec::new([(Prime::new(2).unwrap(), family)].into(), DefaultRule::None).unwrap();
        let (code, r) = report(&["member", "--poly", "1"], Some(&ring.to_json()));
        assert_eq!(code, 0);
        assert_eq!(RingSpec::from_json_value(&r["inputs"]["ring"]).unwrap(), ring);
    }
}
