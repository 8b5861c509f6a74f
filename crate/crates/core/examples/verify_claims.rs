//! Runs a few claims through the report layer and prints the table and JSON.

use modlie::cli::{reports_json, reports_table, verify, VerifyOptions};

fn main() -> modlie::Result<()> {
    let mut reports = verify("dimh2-w1n", &VerifyOptions::default(), None)?;
    reports.extend(verify("lambda-identities", &VerifyOptions { p: Some(7), ..Default::default() }, None)?);
    reports.extend(verify("h2plus-sl2", &VerifyOptions { m: Some(1), ..Default::default() }, None)?);
    print!("{}", reports_table(&reports));
    println!("{}", reports_json(&reports[..1]));
    Ok(())
}
