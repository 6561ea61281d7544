use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

use equisingular::connections::{connection_to_json, InvariantConnection};
use equisingular::free_graded::NCSeries;
use equisingular::hopf_characters::{
    antipode_inverse, convolve, Character, RootedTrees, ShuffleHopf, Tree,
};
use equisingular::scalar_series::{int, rat, LaurentSeries, PolyCoeff, Rational, Symbol};

fn equi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equi")).args(args).env_remove("EQUI_TRUNC").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn z_pow(c: PolyCoeff, k: i32) -> LaurentSeries {
    LaurentSeries::monomial(c, k)
}

#[test]
fn frame_order_one_csv() {
    let out = equi(&["frame", "--order", "1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "word;coefficient_num;coefficient_den;v_exp;z_exp\n(1);1;1;1;-1\n"
    );
}

#[test]
fn frame_is_deterministic_and_checked() {
    let a = equi(&["frame", "--order", "4"]);
    let b = equi(&["frame", "--order", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout_json(&a).is_object() || stdout_json(&a).is_array());
    let checked = equi(&["frame", "--order", "3", "--oracle-steps", "20000"]);
    assert_eq!(code(&checked), 0);
    assert_eq!(checked.stdout, equi(&["frame", "--order", "3"]).stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&equi(&["frame", "--order", "0"])), 2);
    assert_eq!(code(&equi(&["frame", "--order", "7"])), 2);
    assert_eq!(code(&equi(&["--trunc", "13", "frame", "--order", "2"])), 2);
    assert_eq!(code(&equi(&["frame"])), 2);
    assert_eq!(code(&equi(&["verify", "/nonexistent/connection.json"])), 2);
    let env = Command::new(env!("CARGO_BIN_EXE_equi"))
        .args(["frame", "--order", "8"])
        .env("EQUI_TRUNC", "8")
        .output()
        .unwrap();
    assert_eq!(code(&env), 0);
}

#[test]
fn birkhoff_shuffle_writes_factors() {
    let dir = TempDir::new().unwrap();
    let p = ShuffleHopf::new(3);
    let e = |n| NCSeries::<Rational>::generator(3, n).to_laurent();
    let x = &e(1).scale(&z_pow(PolyCoeff::symbol(Symbol::L), -1))
        + &e(2).scale(&LaurentSeries::from_terms([(-2, PolyCoeff::constant(int(1))), (1, PolyCoeff::constant(rat(1, 3)))]));
    let phi = Character::from_series(&p, &x.exp().unwrap());
    let input = write(&dir, "phi.json", &phi.to_json());
    let (minus, plus) = (dir.path().join("minus.json"), dir.path().join("plus.json"));

    let out = equi(&["birkhoff", s(&input), "--minus", s(&minus), "--plus", s(&plus)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["report"]["reconstructed"], "exact");

    let read = |f: &Path| serde_json::from_str::<Value>(&fs::read_to_string(f).unwrap()).unwrap();
    let m = Character::from_json(&p, &read(&minus)).unwrap();
    let q = Character::from_json(&p, &read(&plus)).unwrap();
    let back = convolve(&p, &antipode_inverse(&p, &m).unwrap(), &q).unwrap();
    assert!(back.agrees(&phi));

    let inline = stdout_json(&equi(&["birkhoff", s(&input)]));
    assert_eq!(inline["minus"], read(&minus));
    assert_eq!(inline["plus"], read(&plus));
}

#[test]
fn birkhoff_rooted_trees() {
    let dir = TempDir::new().unwrap();
    let p = RootedTrees::new(3);
    let ladder = Tree::graft(&[Tree::vertex()]);
    let phi = Character::from_values(
        &p,
        [
            (Tree::vertex(), z_pow(PolyCoeff::constant(int(1)), -1)),
            (ladder, LaurentSeries::from_terms([(-2, PolyCoeff::constant(rat(1, 2))), (0, PolyCoeff::constant(int(3)))])),
        ],
    );
    let input = write(&dir, "trees.json", &phi.to_json());
    let out = equi(&["birkhoff", s(&input)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["presentation"], "rooted_trees");
    assert_eq!(v["minus"]["presentation"], "rooted_trees");
}

#[test]
fn malformed_inputs_exit_three() {
    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{not json").unwrap();
    assert_eq!(code(&equi(&["birkhoff", s(&garbage)])), 3);
    assert_eq!(code(&equi(&["verify", s(&garbage)])), 3);
    let unknown = write(&dir, "u.json", &json!({"presentation": "ladders", "trunc": 2, "values": []}));
    assert_eq!(code(&equi(&["birkhoff", s(&unknown)])), 3);
    let bad_key = write(&dir, "k.json", &json!({"presentation": "shuffle", "trunc": 2, "values": [{"key": "(0)", "series": {}}]}));
    assert_eq!(code(&equi(&["birkhoff", s(&bad_key)])), 3);
    let no_b = write(&dir, "c.json", &json!({"trunc": 2, "a": []}));
    assert_eq!(code(&equi(&["classify", s(&no_b)])), 3);
}

fn beta() -> NCSeries<LaurentSeries> {
    let e = |n| NCSeries::<Rational>::generator(3, n).to_laurent();
    &e(1) + &e(2).scale(&LaurentSeries::constant(PolyCoeff::constant(int(-2))))
}

#[test]
fn classify_recovers_beta() {
    let dir = TempDir::new().unwrap();
    let omega = InvariantConnection::from_beta(&beta());
    let input = write(&dir, "omega.json", &connection_to_json(&omega));
    let out = equi(&["classify", s(&input)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(NCSeries::<LaurentSeries>::from_json(&stdout_json(&out)).unwrap(), beta());

    let v = stdout_json(&equi(&["verify", s(&input)]));
    assert_eq!(v["flat"], true);
    assert_eq!(v["equisingular"], true);
    assert_eq!(v["obstruction"], Value::Null);
    assert_eq!(NCSeries::<LaurentSeries>::from_json(&v["beta"]).unwrap(), beta());
}

#[test]
fn non_equisingular_and_non_flat_exit_five() {
    let dir = TempDir::new().unwrap();
    let e1 = NCSeries::<Rational>::generator(2, 1).to_laurent();
    let gamma = e1.scale(&z_pow(PolyCoeff::symbol(Symbol::L), -2)).exp().unwrap();
    let wild = write(&dir, "wild.json", &connection_to_json(&InvariantConnection::of_loop(&gamma)));
    let v = stdout_json(&equi(&["verify", s(&wild)]));
    assert_eq!(v["flat"], true);
    assert_eq!(v["equisingular"], false);
    assert_eq!(code(&equi(&["classify", s(&wild)])), 5);

    let a = e1.scale(&z_pow(PolyCoeff::symbol(Symbol::L), -1));
    let bent = write(&dir, "bent.json", &connection_to_json(&InvariantConnection::new(a, NCSeries::zero(2))));
    let out = equi(&["verify", s(&bent)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["flat"], false);
    assert_eq!(code(&equi(&["classify", s(&bent)])), 5);
}

#[test]
fn morphism_verdicts() {
    let dir = TempDir::new().unwrap();
    let twisted = json!({"dims": {"0": 1, "1": 1}, "beta": [{"n": 1, "matrix": [[0, 0], [1, 0]]}]});
    let split = json!({"dims": {"0": 1, "1": 1}, "beta": []});
    let (e, f) = (write(&dir, "e.json", &twisted), write(&dir, "f.json", &split));
    let ident = write(&dir, "id.json", &json!({"blocks": [{"degree": 0, "matrix": [[1]]}, {"degree": 1, "matrix": [[1]]}]}));
    let top = write(&dir, "top.json", &json!({"blocks": [{"degree": 1, "matrix": [["2/3"]]}]}));

    let check = |a: &Path, b: &Path, t: &Path| {
        let out = equi(&["morphism", s(a), s(b), s(t)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        stdout_json(&out)["morphism"].as_bool().unwrap()
    };
    assert!(check(&e, &e, &ident));
    assert!(check(&f, &f, &ident));
    assert!(!check(&e, &f, &ident));
    assert!(!check(&e, &f, &top));
    assert!(check(&f, &e, &top));

    let shape = write(&dir, "shape.json", &json!({"blocks": [{"degree": 0, "matrix": [[1, 2]]}]}));
    assert_eq!(code(&equi(&["morphism", s(&e), s(&f), s(&shape)])), 3);
    assert_eq!(code(&equi(&["--format", "csv", "morphism", s(&e), s(&f), s(&ident)])), 2);
}

#[test]
fn birkhoff_primitive_and_regular_characters() {
    let dir = TempDir::new().unwrap();
    let p = ShuffleHopf::new(1);
    let a = PolyCoeff::constant(rat(3, 2));
    let b = PolyCoeff::symbol(Symbol::L);
    let primitive = Character::from_series(
        &p,
        &NCSeries::<Rational>::generator(1, 1).to_laurent().scale(&LaurentSeries::from_terms([(-1, a.clone()), (0, b)])),
    );
    let v = stdout_json(&equi(&["birkhoff", s(&write(&dir, "prim.json", &primitive.to_json()))]));
    let minus = Character::from_json(&p, &v["minus"]).unwrap();
    let expected = Character::from_series(&p, &NCSeries::<Rational>::generator(1, 1).to_laurent().scale(&z_pow(-a, -1)));
    assert_eq!(minus, expected);

    let p3 = ShuffleHopf::new(3);
    let regular = Character::from_series(
        &p3,
        &NCSeries::<Rational>::generator(3, 2).to_laurent().scale(&z_pow(PolyCoeff::constant(int(4)), 1)).exp().unwrap(),
    );
    let v = stdout_json(&equi(&["birkhoff", s(&write(&dir, "reg.json", &regular.to_json()))]));
    assert_eq!(v["minus"]["values"], json!([]));
    assert_eq!(Character::from_json(&p3, &v["plus"]).unwrap(), regular);
}

#[test]
fn zero_and_single_generator_connections() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "zero.json", &json!({"trunc": 3, "a": [], "b": []}));
    let v = stdout_json(&equi(&["verify", s(&zero)]));
    assert_eq!((v["flat"].clone(), v["equisingular"].clone()), (json!(true), json!(true)));
    let beta = stdout_json(&equi(&["classify", s(&zero)]));
    assert_eq!(beta["terms"], json!([]));

    let e2 = NCSeries::<Rational>::generator(3, 2).to_laurent();
    let input = write(&dir, "e2.json", &connection_to_json(&InvariantConnection::from_beta(&e2)));
    let out = equi(&["classify", s(&input)]);
    assert_eq!(code(&out), 0);
    let beta = NCSeries::<LaurentSeries>::from_json(&stdout_json(&out)).unwrap();
    assert_eq!(beta, e2);
    assert_eq!(beta.terms().count(), 1);
    assert_eq!(equi(&["classify", s(&input)]).stdout, out.stdout);
}
