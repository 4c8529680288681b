use std::io::Write;

use bvd_cli::{parse_args, CliConfig, CliError, Command};
use bvd_core::experiments::{Figure, Profile};
use bvd_core::Scheme;

fn usage_message(args: &[&str]) -> String {
    match parse_args(args) {
        Err(e @ CliError::Usage(_)) => {
            assert_eq!(e.exit_code(), 1);
            e.to_string()
        }
        Err(e @ CliError::Clap(_)) => {
            assert_eq!(e.exit_code(), 1);
            e.to_string()
        }
        other => panic!("expected a usage error for {args:?}, got {other:?}"),
    }
}

#[test]
fn run_with_scheme_n_and_beta() {
    let cfg = parse_args(["run", "--scheme", "bvd4", "--n", "200", "--beta", "4.0"]).unwrap();
    let mut want = CliConfig::defaults(Command::Run);
    want.scheme = Scheme::Bvd4;
    want.beta = 4.0;
    want.out_dir = cfg.out_dir.clone();
    assert_eq!(cfg, want);
    assert_eq!(cfg.n_cells, 200);
    assert_eq!(cfg.s_cutoff, 1e6);
    assert_eq!(cfg.delta, 1e-4);
    assert_eq!(cfg.periods, 1.0);
    assert_eq!(cfg.profile, Profile::ComplexWaves);
}

#[test]
fn reproduce_figure_one_is_weno_only() {
    let cfg = parse_args(["reproduce", "--figure", "1"]).unwrap();
    assert_eq!(cfg.command, Command::Reproduce(Figure::WenoZ));
    assert_eq!(cfg.scheme, Scheme::WenoZ);
    assert_eq!(cfg.n_cells, 200);
    assert_eq!(cfg.periods, 1.0);

    let six = parse_args(["reproduce", "--figure", "6"]).unwrap();
    assert_eq!(six.scheme, Scheme::Bvd4);
    assert_eq!(six.beta, 4.0);
}

#[test]
fn out_of_range_values_are_usage_errors() {
    assert!(usage_message(&["run", "--cfl", "1.5"]).contains("cfl"));
    assert!(usage_message(&["run", "--cfl", "0"]).contains("cfl"));
    assert!(usage_message(&["run", "--beta", "0"]).contains("beta"));
    assert!(usage_message(&["run", "--beta", "-1"]).contains("beta"));
    assert!(usage_message(&["run", "--n", "9"]).contains("--n"));
    usage_message(&["run", "--delta", "0.5"]);
    usage_message(&["run", "--periods", "0"]);
    usage_message(&["reproduce", "--figure", "7"]);
    usage_message(&["reproduce"]);
    usage_message(&["frobnicate"]);
    assert!(parse_args(["run", "--cfl", "1.0"]).is_ok());
    assert!(parse_args(["run", "--n", "10"]).is_ok());
}

#[test]
fn unknown_scheme_lists_the_known_ones() {
    let msg = usage_message(&["run", "--scheme", "weno7"]);
    for name in ["wenoz", "bvd1", "bvd2", "bvd3", "bvd4"] {
        assert!(msg.contains(name), "{msg}");
    }
    assert!(usage_message(&["run", "--profile", "zigzag"]).contains("complex_waves"));
}

#[test]
fn help_exits_successfully() {
    let err = parse_args(["--help"]).unwrap_err();
    assert_eq!(err.exit_code(), 0);
    let err = parse_args(["run", "--help"]).unwrap_err();
    assert_eq!(err.exit_code(), 0);
}

#[test]
fn flags_override_config_file_which_overrides_defaults() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# settings\nscheme = bvd2\nn = 64\ncfl = 0.3  # trailing comment\n\nprofile = sine").unwrap();
    let path = file.path().to_str().unwrap();

    let cfg = parse_args(["run", "--config", path, "--n", "128"]).unwrap();
    assert_eq!(cfg.scheme, Scheme::Bvd2);
    assert_eq!(cfg.n_cells, 128);
    assert_eq!(cfg.cfl, 0.3);
    assert_eq!(cfg.profile, Profile::Sine);
    assert_eq!(cfg.beta, 1.8);
}

#[test]
fn bad_config_files_are_rejected() {
    let mut unknown = tempfile::NamedTempFile::new().unwrap();
    writeln!(unknown, "speed = 2").unwrap();
    usage_message(&["run", "--config", unknown.path().to_str().unwrap()]);

    let mut invalid = tempfile::NamedTempFile::new().unwrap();
    writeln!(invalid, "cfl = 4").unwrap();
    usage_message(&["run", "--config", invalid.path().to_str().unwrap()]);

    let missing = parse_args(["run", "--config", "/nonexistent/bvd.conf"]).unwrap_err();
    assert_eq!(missing.exit_code(), 3);
}

#[test]
fn convergence_defaults_to_a_smooth_profile() {
    let cfg = parse_args(["convergence"]).unwrap();
    assert_eq!(cfg.profile, Profile::Sine);
    let sq = parse_args(["convergence", "--profile", "square"]).unwrap();
    assert_eq!(sq.profile, Profile::Square);
}

#[test]
fn solver_failures_map_to_exit_codes() {
    let nan = CliError::from(bvd_core::Error::NonFinite { step: 3, time: 0.1, cell: 7 });
    assert_eq!(nan.exit_code(), 2);
    let io = CliError::from(std::io::Error::other("disk full"));
    assert_eq!(io.exit_code(), 3);
}
