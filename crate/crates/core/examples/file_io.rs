//! Writes a code file and a Gram CSV, then reads both back.

use equicode::cli::{gram_csv, parse_gram_csv, CodeFile, Metadata};
use equicode::constructions::regular_simplex;
use equicode::Tolerance;

fn main() -> equicode::Result<()> {
    let code = regular_simplex(3)?;
    let json = CodeFile::from_code(&code, Metadata::named("simplex").with("r", 3)).to_json()?;
    print!("{json}");
    let again = CodeFile::from_json(&json)?.to_json()?;
    println!("byte-identical round trip: {}", again == json);

    let csv = gram_csv(&code);
    print!("{csv}");
    let rows = parse_gram_csv(&csv)?;
    let file = CodeFile { format_version: "1".into(), dim: 3, vectors: None, gram: Some(rows), metadata: Metadata::default() };
    let back = file.to_code(&Tolerance::default())?;
    println!("re-embedded {} vectors in R^{}", back.len(), back.dim());
    Ok(())
}
