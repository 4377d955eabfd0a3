//! Golden-file cases shared by the CLI tests and the acceptance runner.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn lineact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lineact"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .expect("binary runs")
}

/// A command whose files (relative to the golden directory) must match the
/// stored fixtures byte for byte.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub outputs: &'static [&'static str],
}

pub const CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "identity graph",
        args: &["plot", "--spec", "identity.json", "--output", "{out}/identity.svg"],
        outputs: &["identity.svg"],
    },
    GoldenCase {
        name: "integer realization",
        args: &["realize", "--spec", "z_natural.txt", "--n", "5", "--output", "{out}/z_natural_table.txt"],
        outputs: &["z_natural_table.txt"],
    },
    GoldenCase {
        name: "f2 family with sign regions",
        args: &[
            "family", "f2", "--omega", "+-", "--window", "-2,2", "--output", "{out}/f2_rep.txt", "--svg",
            "{out}/f2_sign.svg",
        ],
        outputs: &["f2_rep.txt", "f2_sign.svg"],
    },
    GoldenCase {
        name: "brin-navas supports",
        args: &[
            "family", "brin-navas", "--output", "{out}/brin_navas_rep.txt", "--svg", "{out}/brin_navas_arcs.svg",
        ],
        outputs: &["brin_navas_rep.txt", "brin_navas_arcs.svg"],
    },
    GoldenCase {
        name: "suspension demo",
        args: &[
            "suspension", "demo", "--window", "-3,3", "--max-n", "8", "--output", "{out}/suspension_report.txt",
            "--svg", "{out}/suspension.svg", "--trace", "{out}/suspension_trace.txt",
        ],
        outputs: &["suspension_report.txt", "suspension.svg", "suspension_trace.txt"],
    },
];

/// Runs a case into `out` and returns the produced files in order.
pub fn run_case(case: &GoldenCase, out: &Path) -> Result<Vec<Vec<u8>>, String> {
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| a.replace("{out}", out.to_str().expect("utf-8 path")))
        .collect();
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let result = lineact(&refs);
    if !result.status.success() {
        return Err(format!(
            "{}: exit {:?}: {}",
            case.name,
            result.status.code(),
            String::from_utf8_lossy(&result.stderr)
        ));
    }
    case.outputs
        .iter()
        .map(|f| std::fs::read(out.join(f)).map_err(|e| format!("{}: {f}: {e}", case.name)))
        .collect()
}

/// Empty scratch directory under the target directory.
pub fn scratch(label: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(label);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}
