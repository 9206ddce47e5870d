//! Build a command programmatically, render it, and replay it from its JSON.

use spinstar::cli::{Format, GridSpec, Invocation, SystemSpec};
use spinstar::presets::XEF2;

fn main() -> spinstar::Result<()> {
    let run = Invocation::ConcurrenceTrace {
        system: SystemSpec::from_preset(&XEF2.to_owned()),
        field: 1.0,
        times: GridSpec {
            min: 0.0,
            max: 1.0,
            steps: 6,
        },
    };
    let report = run.execute()?;
    print!("{}", report.render(Format::Csv));

    let json = report.render(Format::Json);
    let doc: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    let again: Invocation = serde_json::from_value(doc["inputs"].clone()).expect("inputs parse");
    assert_eq!(again.execute()?.render(Format::Json), json);
    println!("JSON replay reproduces the report byte for byte");
    Ok(())
}
