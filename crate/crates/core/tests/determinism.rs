use clap::Parser;
use conic_codes::cli::{execute, RunConfig};

fn output(args: &[&str]) -> String {
    let cfg = RunConfig::try_parse_from(std::iter::once("conic-codes").chain(args.iter().copied())).unwrap();
    execute(&cfg).unwrap().text
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    for cmd in [
        &["dims", "3..27"][..],
        &["verify", "7", "--depth", "group"],
        &["group-audit", "9"],
        &["export", "9", "--matrix", "Dprime", "--format", "json"],
        &["dump-geometry", "5"],
    ] {
        let one = output(&[cmd, &["--threads", "1"]].concat());
        let four = output(&[cmd, &["--threads", "4"]].concat());
        assert_eq!(one, four, "{cmd:?}");
        assert_eq!(one, output(cmd), "{cmd:?}");
    }
}
