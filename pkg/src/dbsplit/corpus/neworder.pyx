// New-order style transaction: read the item costs of an order, apply a
// discount, record one line item per cost and charge the customer.

class Order {
    int id;
    array realCosts;
    float totalCost;
}

fn getCosts(o) {
    var rows = query("find OrderItem order", o.id);
    var n = len(rows);
    var costs = new float[n];
    var j = 0;
    while (j < n) {
        var row = rows[j];
        costs[j] = row[2];
        j++;
    }
    return costs;
}

fn insertNewLineItem(id, realCost) {
    exec("append LineItem", id, realCost);
}

fn updateAccount(cid, amount) {
    exec("add Customer balance", cid, 0.0 - amount);
}

fn computeTotalCost(o, dct) {
    var i = 0;
    var costs = getCosts(o);
    o.realCosts = new float[len(costs)];
    for (var itemCost : costs) {
        var realCost = itemCost * dct;
        o.totalCost += realCost;
        o.realCosts[i++] = realCost;
        insertNewLineItem(o.id, realCost);
    }
}

fn placeOrder(o, cid, dct) {
    o.totalCost = 0.0;
    computeTotalCost(o, dct);
    updateAccount(cid, o.totalCost);
}

entry fn newOrder(oid, cid, dct) {
    var o = new Order();
    o.id = oid;
    placeOrder(o, cid, dct);
    return o.totalCost;
}
