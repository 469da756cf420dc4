//! Run every reproduction target and summarize.

use boundquiver::{check_paper, Result, Target};

fn main() -> Result<()> {
    for target in Target::ALL {
        let ns: Vec<Option<usize>> = match target.range() {
            Some(r) => r.map(Some).collect(),
            None => vec![None],
        };
        for n in ns {
            let reports = check_paper(target, n)?;
            let passed = reports.iter().filter(|r| r.pass).count();
            let label = n.map_or(target.to_string(), |n| format!("{target} {n}"));
            println!("{label}: {passed}/{} checks pass", reports.len());
            for r in reports.iter().filter(|r| !r.pass) {
                println!("  {r}");
            }
        }
    }
    Ok(())
}
