//! The JSON sequence descriptors accepted by the command line.

use cantor_bouquet::SymbolSeq;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let texts = [
        r#"{"tail": {"kind": "const", "c": 1}}"#,
        r#"{"prefix": [3, -1, 4], "tail": {"kind": "periodic", "pattern": [1, 5, 9]}}"#,
        r#"{"prefix": [0], "tail": {"kind": "fexp", "c": 3}}"#,
        r#"{"tail": {"kind": "linexp", "c": "3/2", "offset": 2}}"#,
        r#"{"prefix": [{"floor_tower": {"c": 3, "height": 5}}], "tail": {"kind": "const", "c": 0}}"#,
    ];
    for text in texts {
        let s = SymbolSeq::from_json(text)?;
        let first: Vec<String> = (0..5).map(|n| s.seq_at(n).to_string()).collect();
        println!("{s}\n    s_0.. = {}\n    σ^2 s = {}", first.join(", "), s.shift(2).to_json());
    }
    if let Err(e) = SymbolSeq::from_json(r#"{"tail": {"kind": "periodic", "pattern": []}}"#) {
        println!("rejected: {e}");
    }
    Ok(())
}
