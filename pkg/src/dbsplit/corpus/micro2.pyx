// Query phase, compute phase, query phase: the placement that wins depends
// on how busy the database host is.

fn work(k, n, m) {
    var first = 0.0;
    var i = 0;
    while (i < n) {
        var rows = query("get Item", i % k + 1);
        var row = rows[0];
        first = first + row[1];
        i++;
    }
    var x = first;
    var j = 0;
    while (j < m) {
        x = (x * 31.0 + 7.0) % 1000.0;
        j++;
    }
    var second = 0.0;
    i = 0;
    while (i < n) {
        var found = query("find Item tag", i % 3);
        second = second + len(found);
        i++;
    }
    return first + x + second;
}

entry fn run(k, n, m) {
    var r = work(k, n, m);
    return r;
}
