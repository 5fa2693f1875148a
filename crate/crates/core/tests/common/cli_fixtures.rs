//! Command-line fixtures shared by the CLI tests and the acceptance target.

use soleknot::cli::dispatch;

pub struct Run {
    pub code: i32,
    pub out: String,
    pub err: String,
}

pub fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("soleknot").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

/// `(args, exit code, expected substring of stdout or stderr)`.
pub const FIXTURES: &[(&[&str], i32, &str)] = &[
    (
        &["closure", "2: s1 s1 s1"],
        0,
        "components=1 winding=2 exponent_sum=3 is_knot=true",
    ),
    (
        &["closure", "3: s1 s1"],
        0,
        "components=3 winding=3 exponent_sum=2 is_knot=false",
    ),
    (&["act", "2: s1", "x1"], 0, "x1 x2 X1"),
    (&["act", "2: s1", "x1 x2", "--power", "-2"], 0, "x1 x2"),
    (&["centralizer", "2: s1 s1 s1"], 0, "commute: true"),
    (
        &["present", "2: s1", "--simplify"],
        0,
        "gens: x1\nmeridian: x1\nlongitude:",
    ),
    (
        &["present", "2: s1 s1 s1", "--ambient", "torus"],
        0,
        "# closure meridian: x1",
    ),
    (&["alexander", "3: s1 S2 s1 S2"], 0, "t^2 - 3t + 1"),
    (&["abelianize", "gens: a b; rel: a a; rel: b b b"], 0, "Z/6"),
    (
        &["classify", "pre: 12 | per: 2 3", "pre: | per: 6"],
        0,
        "equivalent\nfirst: 2^inf 3^inf",
    ),
    (
        &["classify", "pre: | per: 2", "pre: | per: 3"],
        0,
        "inequivalent",
    ),
    (&["--help"], 0, "Usage"),
    // error paths
    (&["centralizer", "2: s1 s1"], 1, "closure has 2 components"),
    (&["closure", "2: s3"], 1, "needs at least 4 strands"),
    (&["closure", "2 s1"], 1, "parse error"),
    (&["closure", "2: q1"], 1, "parse error"),
    (&["act", "2: s1", "x3"], 1, "outside rank 2"),
    (&["act", "2: s1", "y1"], 1, "parse error"),
    (
        &[
            "act",
            "3: s1 S2",
            "x1",
            "--power",
            "40",
            "--max-word-len",
            "1000",
        ],
        1,
        "exceeds the limit 1000",
    ),
    (
        &[
            "centralizer",
            "3: s1 s2",
            "--enumerate",
            "--max-texp",
            "4",
            "--max-len",
            "6",
            "--budget",
            "10",
        ],
        1,
        "budget is 10",
    ),
    (
        &["satellite", "2: s1 s1 s1", "1:"],
        1,
        "winding number 1 is too small",
    ),
    (
        &["satellite", "gens: a", "2: s1 s1 s1"],
        1,
        "no peripheral pair",
    ),
    (
        &["satellite", "2: s1 s1 s1", "2: s1 s1"],
        1,
        "closure has 2 components",
    ),
    (
        &["filtration", "2: s1 s1 s1", "2: s1 s1 s1", "--depth", "2"],
        1,
        "depth 2 exceeds the 1 patterns",
    ),
    (
        &["alexander", "gens: a b; rel: a a"],
        1,
        "not infinite cyclic",
    ),
    (&["abelianize", "gens: a; rel: b"], 1, "unknown generator"),
    (
        &["abelianize", "gens: a; meridian: a"],
        1,
        "must be given together",
    ),
    (
        &["classify", "pre: 1 | per:", "pre: | per: 2"],
        1,
        "smaller than 2; winding sequence has an empty period",
    ),
    (
        &["classify", "pre: | per: 1000003", "pre: | per: 2"],
        1,
        "exceeds the factorization bound",
    ),
    (
        &["classify", "pre: 2 per: 3", "pre: | per: 2"],
        1,
        "parse error",
    ),
    (&["verify", "--corpus", "huge"], 1, "unknown corpus"),
    (&["closure", "@/nonexistent/soleknot"], 1, "cannot read"),
    (
        &["present", "2: s1", "--ambient", "moon"],
        1,
        "invalid value",
    ),
    (&["closure"], 1, "required arguments"),
    (&["frobnicate"], 1, "unrecognized subcommand"),
    (&["closure", "2: s1", "--format", "xml"], 1, "invalid value"),
    (
        &["centralizer", "2: s1", "--budget", "-3"],
        1,
        "unexpected argument",
    ),
];
