//! Re-runs the seeded calibration suites and rewrites fixtures/audit_constants.json.
//!
//! cargo run --release --example calibrate

use monoquad::audit::{measure_all, AuditConstants, Environment, Fixture, CALIBRATION_SEED};

fn main() -> monoquad::Result<()> {
    let measured = measure_all(CALIBRATION_SEED)?;
    let rustc = std::process::Command::new("rustc")
        .arg("--version")
        .output()
        .map(|o| String::from_utf8_lossy(&o.stdout).trim().to_string())
        .unwrap_or_default();
    let fixture = Fixture {
        constants: AuditConstants::from_measured(&measured),
        measured,
        seed: CALIBRATION_SEED,
        environment: Environment {
            crate_version: env!("CARGO_PKG_VERSION").into(),
            rustc,
            arch: std::env::consts::ARCH.into(),
            os: std::env::consts::OS.into(),
        },
    };
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/audit_constants.json");
    std::fs::write(path, serde_json::to_string_pretty(&fixture)? + "\n")?;
    println!("{}", serde_json::to_string_pretty(&fixture)?);
    Ok(())
}
