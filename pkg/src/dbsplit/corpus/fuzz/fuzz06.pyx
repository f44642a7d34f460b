// generated by dbsplit.corpus.fuzz (seed 6)

class C0 {
    int a;
    float b;
    array xs;
    C1 link;
}

class C1 {
    int v;
}

fn h0(o, p) {
    p -= 5;
    return ((o.link.v + p) - (10 % 3));
}

fn h1(o, p) {
    var rows1 = query("get T", (3) % 5 + 1);
    var q2 = len(rows1);
    for (var row3 : rows1) {
        q2 += row3[2];
    }
    var arr4 = new int[2];
    arr4[1] = 3;
    var i5 = 0;
    while (i5 < 4) {
        if ((len(arr4) / 6) > o.a) {
            return o.link.v;
        }
        i5++;
    }
    return arr4[1];
}

entry fn main(x, y) {
    var o6 = new C0();
    o6.xs = new int[2];
    o6.link = new C1();
    o6.link.v = (x + 3);
    o6.a = (x / 2);
    var v7 = ((y * o6.link.v) / 3);
    o6.a += (o6.a + (o6.link.v + o6.a));
    exec("add T v", 4, (y - o6.a));
    return o6.link.v;
}
