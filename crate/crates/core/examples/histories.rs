//! Laguerre and Meixner histories and their bijections onto permutations and
//! onto set partitions with cycles of blocks.

use ri_orthopoly::exactmath::Scalar;
use ri_orthopoly::histories::{
    enumerate_lh, lh_moment_check, mh_chain, nonexcedance_check, phi, phi_inv, psi_inv, psi_trace, sample_laguerre,
    sample_meixner,
};

fn main() -> ri_orthopoly::Result<()> {
    let h = sample_laguerre();
    let w = phi(&h);
    println!("{h}\n  -> {w}");
    assert_eq!(phi_inv(&w), h);

    let m = sample_meixner();
    let (pc, rows) = psi_trace(&m);
    println!("{m}\n  -> {pc}");
    for r in &rows {
        let avail: Vec<String> = r.available.iter().map(|b| format!("{b:?}")).collect();
        println!("  A{}: {}{}", r.step, avail.join(" "), r.new_cycle.as_ref().map(|c| format!("  cycle {c:?}")).unwrap_or_default());
    }
    assert_eq!(psi_inv(&pc), m);
    println!("{}", serde_json::to_string(&m.to_json()).expect("json"));

    for h in enumerate_lh(3)? {
        println!("{h}\t{}", phi(&h));
    }
    let (a, b, d) = (Scalar::frac(1, 3), Scalar::frac(5, 2), Scalar::frac(1, 3));
    println!("Laguerre sums n = 5: {}", lh_moment_check(5, &a)?);
    let chain: Vec<String> = mh_chain(4, &b, &d)?.iter().map(Scalar::to_string).collect();
    println!("Meixner chain n = 4: {}", chain.join(" = "));
    println!("non-excedances n = 5: {}", nonexcedance_check(5, &b, &d));
    Ok(())
}
