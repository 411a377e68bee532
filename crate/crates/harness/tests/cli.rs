use std::process::Command;

fn rtmm(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rtmm"))
        .args(args)
        .output()
        .unwrap()
}

fn temp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("rtmm-cli-{}-{name}", std::process::id()))
}

#[test]
fn config_errors_exit_with_two() {
    let cases: [&[&str]; 5] = [
        &[
            "match",
            "--game",
            "battlecity",
            "--map",
            "open",
            "--max-bot",
            "rush",
            "--min-bot",
            "random",
        ],
        &[
            "match",
            "--game",
            "battlecity",
            "--map",
            "moon",
            "--max-bot",
            "random",
            "--min-bot",
            "random",
        ],
        &[
            "match",
            "--game",
            "chess",
            "--map",
            "open",
            "--max-bot",
            "random",
            "--min-bot",
            "random",
        ],
        &[
            "match",
            "--game",
            "microrts",
            "--scenario",
            "melee",
            "--max-bot",
            "rush",
            "--min-bot",
            "rush",
            "--max-cycles",
            "0",
        ],
        &["replay", "--in", "/nonexistent/log.jsonl"],
    ];
    for args in cases {
        let out = rtmm(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn match_then_replay_then_stats() {
    let log = temp("match.jsonl");
    let csv = temp("stats.csv");
    let out = rtmm(&[
        "match",
        "--game",
        "microrts",
        "--scenario",
        "melee",
        "--max-bot",
        "rtmm",
        "--min-bot",
        "rush",
        "--budget-ms",
        "1",
        "--seed",
        "4",
        "--replay-out",
        log.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("microrts on melee"));

    let out = rtmm(&["replay", "--in", log.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let out = rtmm(&[
        "stats",
        "--in",
        log.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("microrts-melee"));
    assert!(std::fs::read_to_string(&csv)
        .unwrap()
        .starts_with("domain,searches"));

    // A log whose footer lies fails the replay check.
    let text = std::fs::read_to_string(&log).unwrap();
    let forged = text.replace("\"final_cycle\":", "\"final_cycle\":1");
    std::fs::write(&log, forged).unwrap();
    assert_eq!(
        rtmm(&["replay", "--in", log.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    std::fs::remove_file(&log).ok();
    std::fs::remove_file(&csv).ok();
}

#[test]
fn tournament_writes_tables() {
    let dir = temp("tour");
    let args = [
        "tournament",
        "--game",
        "battlecity",
        "--maps",
        "open",
        "--reps",
        "2",
        "--bots",
        "random,follower",
        "--max-cycles",
        "800",
        "--seed",
        "3",
        "--out",
        dir.to_str().unwrap(),
    ];
    let out = rtmm(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(stdout.contains("Follower"));
    assert_eq!(
        std::fs::read_to_string(dir.join("table.txt")).unwrap(),
        stdout
    );
    let csv = std::fs::read_to_string(dir.join("table.csv")).unwrap();
    assert!(csv.starts_with("row,Random,Follower\n"));
    assert_eq!(std::fs::read_dir(dir.join("matches")).unwrap().count(), 6);
    let again = rtmm(&args);
    assert_eq!(String::from_utf8_lossy(&again.stdout), stdout);
    std::fs::remove_dir_all(&dir).ok();
}
