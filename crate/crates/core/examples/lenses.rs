//! Lens basics: extract, merge, complement, composition and factorization.

use lensfocus::{Lens, Tuple};

fn main() -> lensfocus::Result<()> {
    let t = Tuple::parse_digits("10110", 2)?;
    let l = Lens::new(5, vec![3, 0])?;
    let c = l.complement();
    let v = l.extract(&t)?;
    let rest = c.extract(&t)?;
    println!("t = {t}, lens {l}, complement {c}");
    println!("extract = {v}, complement part = {rest}");
    println!("merge back = {}", l.merge(&v, &rest)?);
    println!(
        "merge with 00 = {}",
        l.merge(&Tuple::parse_digits("00", 2)?, &rest)?
    );

    let (basis, perm) = Lens::new(3, vec![1, 2, 0])?.factor();
    println!("\n[1,2,0] factors as basis {basis} then perm {perm}");
    println!("recomposed: {}", basis.compose(&perm)?);

    // A lens into a lens: pick positions of `l`'s image.
    let outer = Lens::new(5, vec![4, 1, 2])?;
    let inner = Lens::new(3, vec![2, 0])?;
    println!("\n{outer} after {inner} = {}", outer.compose(&inner)?);

    match Lens::new(3, vec![0, 0]) {
        Err(e) => println!("\nrejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
