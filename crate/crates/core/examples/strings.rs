//! String algebra checks, strings, bands and string modules.

use boundquiver::families::triangle;
use boundquiver::{check_string_pair, detect_bands, enumerate_strings, parse_presentation, string_module, Result};

fn main() -> Result<()> {
    let t = triangle();
    let q = &t.quiver;
    println!("string pair: {}", check_string_pair(&t).passed);
    let e = enumerate_strings(&t, 12)?;
    println!("{} strings (truncated: {})", e.strings.len(), e.truncated);
    for w in &e.strings {
        let m = string_module(&t, w)?;
        println!("  {:<16} dims {:?}", w.display(q), m.dims);
    }

    let kronecker = parse_presentation("vertices: x y\narrow: a x y\narrow: b x y\n")?;
    for b in detect_bands(&kronecker, 6)? {
        println!("Kronecker band: {}", b.word.display(&kronecker.quiver));
    }
    Ok(())
}
