//! Drives the command layer in-process: the same reports the binary
//! prints, from a request built in code.

use operad_deform::cli::{emit, run, CommandRequest, Format, Options, Verb};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let req = CommandRequest {
        verb: Verb::CobarHomology,
        input: Some(r#"{"preset": "lie"}"#.into()),
        options: Options { arity: Some(3), ..Options::default() },
    };
    print!("{}", emit(&run(&req)?, Format::Text));

    let req = CommandRequest { verb: "partitions".parse()?, input: None, options: Options { arity: Some(3), ..Options::default() } };
    print!("{}", emit(&run(&req)?, Format::Json));
    Ok(())
}
