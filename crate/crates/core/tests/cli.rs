use latfo::cli::run;

fn latfo(args: &[&str]) -> (i32, String, String) {
    let out = run(std::iter::once("latfo").chain(args.iter().copied()));
    (out.code, out.stdout, out.stderr)
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = latfo(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["eval", "--fixture", "fig2_bands", "--def", "A", "--list"]), "SL LZ RZ\n");
    let out = ok(&["definable", "--fixture", "fig2_bands", "--subset", "LZ"]);
    assert!(out.starts_with("not-definable witness=(LZ,RZ)"), "{out}");
    assert_eq!(ok(&["definable", "--fixture", "fig2_bands", "--subset", "LZ,RZ"]), "definable\n");
    assert_eq!(ok(&["semigroup", "sat", "--named", "P3", "--identity", "xy = x^2y"]), "true\n");
}

#[test]
fn every_verb_runs() {
    let dir = std::env::temp_dir().join(format!("latfo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let lat = dir.join("n5.lat");
    std::fs::write(&lat, ok(&["fixture", "export", "n5"])).unwrap();
    let lat = lat.to_str().unwrap();
    let sg = dir.join("p3.sg");
    std::fs::write(&sg, "semigroup P3\norder 3\nrow 0 1 2\nrow 2 2 2\nrow 2 2 2\nname 0 e\nname 1 a\nname 2 0\n").unwrap();
    let sg = sg.to_str().unwrap();
    let defs = dir.join("extra.def");
    std::fs::write(&defs, "def Bot(x) := forall y ( x <= y ) ;\n").unwrap();
    let defs = defs.to_str().unwrap();

    assert!(ok(&["check-lattice", "--lattice", lat]).starts_with("ok n5 elements=5"));
    assert!(ok(&["check-lattice", "--fixture", "m3", "--dot"]).starts_with("digraph"));
    assert_eq!(ok(&["eval", "--lattice", lat, "--def", "Bot", "--defs", defs, "--list"]), "0\n");
    assert_eq!(ok(&["eval", "--fixture", "chain:4", "--def", "N,k=2", "--list"]).lines().count(), 1);
    assert!(ok(&["stdlib", "--list"]).lines().any(|l| l == "N[k>=3](x)"));
    assert_eq!(ok(&["orbits", "--fixture", "m3"]), "# group order 6\n# generator (b,c)\n# generator (a,b)\n0\na b c\n1\n");
    let synth = ok(&["synth", "--fixture", "n5", "--subset", "a"]);
    assert!(synth.starts_with("found "), "{synth}");
    let chain = ok(&["chain-formula", "--formula", "x = x", "--n", "2", "--fixture", "chain:4"]);
    assert!(chain.ends_with("# defines c1\n"), "{chain}");
    assert!(ok(&["fixture", "list"]).lines().any(|l| l == "fig2_bands"));
    assert_eq!(ok(&["semigroup", "sat", "--table", sg, "--identity", "xy = yx"]), "false\n# counterexample x=e y=a\n");
    let ctx = ok(&["semigroup", "context", "--named", "sl2,z:2,null:2", "--identity", "x^2 = x; xy = yx; xy = 0"]);
    assert!(ctx.contains("sl2 1 1 0\nz2 0 1 0\nnull2 0 1 1\n"), "{ctx}");
    let report = ok(&["report", "--fixture", "chain:4"]);
    assert!(report.lines().skip(1).all(|l| l.ends_with(" 1 1 1 1") || l.ends_with(" 1 1 1 1 1")));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn report_tables() {
    let m3 = ok(&["report", "--fixture", "m3"]);
    let rows: Vec<Vec<&str>> = m3.lines().skip(1).map(|l| l.split(' ').collect()).collect();
    // element orbit Atom Neutral ...
    assert_eq!(rows[1][1], rows[2][1]);
    assert_eq!(rows[2][1], rows[3][1]);
    let neutral: Vec<&str> = rows.iter().filter(|r| r[3] == "1").map(|r| r[0]).collect();
    assert_eq!(neutral, ["0", "1"]);
    let fig1 = ok(&["report", "--fixture", "fig1_chain:4:2,3"]);
    for line in fig1.lines().skip(1) {
        let chain_downset = line.ends_with('1');
        assert_eq!(chain_downset, !line.starts_with("TOP "), "{line}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["orbits", "--fixture", "partition:4"][..],
        &["synth", "--fixture", "n5", "--subset", "b"],
        &["report", "--fixture", "fig2_bands"],
        &["semigroup", "context", "--named", "lz:2,rz:2,P3", "--identity", "xy = x; xy = y"],
    ] {
        assert_eq!(ok(args), ok(args));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(latfo(&[]).0, 2);
    assert_eq!(latfo(&["frobnicate"]).0, 2);
    assert_eq!(latfo(&["eval", "--fixture", "m3"]).0, 2);
    assert_eq!(latfo(&["eval", "--lattice", "/nonexistent.lat", "--formula", "x = x"]).0, 2);
    let (code, _, err) = latfo(&["eval", "--fixture", "m3", "--def", "Nope"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: DefError: UnknownDefinition"), "{err}");
    let (code, _, err) = latfo(&["eval", "--fixture", "m3", "--formula", "x <="]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: ParseError: SyntaxError"), "{err}");
    let (code, _, err) = latfo(&["semigroup", "sat", "--named", "z:0", "--identity", "xy = yx"]);
    assert_eq!(code, 1);
    assert!(err.contains("ParameterOutOfRange"), "{err}");
    let (code, _, err) = latfo(&["definable", "--fixture", "m3", "--subset", "q"]);
    assert_eq!(code, 1);
    assert!(err.contains("UnknownElement: q"), "{err}");
}
