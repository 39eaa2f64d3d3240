#!/usr/bin/env python3
"""Regenerates the synthetic fixture dataset under fixtures/.

Output is a pure function of --seed, so the shipped files can be rebuilt
bit for bit: python3 tools/make_fixture.py --seed 20210805 --out fixtures
"""

import argparse
import csv
import datetime as dt
import math
import random
from pathlib import Path

FIRST_DAY = dt.date(2021, 5, 1)
LAST_DAY = dt.date(2021, 9, 30)
ZERO = "0x" + "0" * 40
TOKENS = {
    "dai": "0x6b175474e89094c44da98b954eedeac495271d0f",
    "sai": "0x89d24a6b4ccb1b6faa2625fe562bdd9a23260359",
}
WEI = 10**18


def days():
    d = FIRST_DAY
    while d <= LAST_DAY:
        yield d
        d += dt.timedelta(days=1)


def address(rng):
    return "0x" + "".join(rng.choice("0123456789abcdef") for _ in range(40))


def price_path(rng, start, drift, sigma, n):
    prices = [start]
    for _ in range(n - 1):
        prices.append(prices[-1] * math.exp(drift + sigma * rng.gauss(0.0, 1.0)))
    return prices


def volatility30(prices):
    out = []
    logret = [None] + [math.log(b / a) for a, b in zip(prices, prices[1:])]
    for t in range(len(prices)):
        window = [r for r in logret[max(1, t - 29) : t + 1]]
        if t < 30:
            out.append(None)
            continue
        m = sum(window) / len(window)
        out.append(math.sqrt(sum((r - m) ** 2 for r in window) / (len(window) - 1)))
    return out


def fmt(x, digits):
    return "" if x is None else f"{x:.{digits}f}"


def write_market(path, dates, prices, cap_scale, tx_value, tx_count, missing_price=()):
    vol = volatility30(prices)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "CapMrktCurUSD", "PriceUSD", "VtyDayRet30d", "TxTfrValAdjUSD", "TxTfrCnt"])
        for i, d in enumerate(dates):
            price = None if d in missing_price else prices[i]
            w.writerow([
                d.isoformat(),
                fmt(prices[i] * cap_scale, 2),
                fmt(price, 6),
                fmt(vol[i], 8),
                fmt(tx_value[i], 2),
                str(tx_count[i]),
            ])


def write_transfers(path, rng, token, dates, eth_prices, holders, iso_t, malformed_line=None):
    rows = 0
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["token_address", "from_address", "to_address", "value", "transaction_hash",
                    "log_index", "block_timestamp", "block_number", "block_hash"])
        block = 12_340_000
        daily_value, daily_count = [], []
        for i, d in enumerate(dates):
            ret30 = 0.0 if i < 30 else math.log(eth_prices[i] / eth_prices[i - 30])
            # Busier, more evenly spread days when the market has risen.
            n = max(5, int(60 + 120 * ret30 + rng.gauss(0, 8)))
            whale_share = min(0.9, max(0.05, 0.35 - 0.5 * ret30 + rng.gauss(0, 0.05)))
            secs = sorted(rng.randrange(86400) for _ in range(n))
            total = 0
            for k, s in enumerate(secs):
                if k == 0:
                    amount = int(whale_share * 5_000_000 * WEI)
                else:
                    amount = int(math.exp(rng.gauss(7.0, 2.0)) * WEI)
                if rng.random() < 0.01:
                    amount = 0
                sender = ZERO if rng.random() < 0.02 else rng.choice(holders)
                receiver = ZERO if rng.random() < 0.01 else rng.choice(holders)
                ts = dt.datetime.combine(d, dt.time()) + dt.timedelta(seconds=s)
                stamp = ts.strftime("%Y-%m-%dT%H:%M:%SZ") if iso_t else ts.strftime("%Y-%m-%d %H:%M:%S UTC")
                block += 1
                value = str(amount)
                if malformed_line is not None and rows == malformed_line:
                    value = "-" + value
                w.writerow([token, sender, receiver, value, "0x%064x" % rng.getrandbits(256), k, stamp, block,
                            "0x%064x" % rng.getrandbits(256)])
                rows += 1
                total += amount
            daily_value.append(total / WEI)
            daily_count.append(n)
    return daily_value, daily_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=20210805)
    ap.add_argument("--out", type=Path, default=Path("fixtures"))
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = args.out
    (out / "transfers").mkdir(parents=True, exist_ok=True)
    (out / "market").mkdir(parents=True, exist_ok=True)

    dates = list(days())
    n = len(dates)
    eth = price_path(rng, 2800.0, 0.002, 0.045, n)
    btc = price_path(rng, 57000.0, 0.0005, 0.035, n)
    write_market(out / "market" / "eth.csv", dates, eth, 1.17e8, [1e9 * (1 + 0.2 * rng.random()) for _ in dates],
                 [int(1.1e6 + 1e5 * rng.random()) for _ in dates])
    write_market(out / "market" / "btc.csv", dates, btc, 1.87e7, [9e9 * (1 + 0.2 * rng.random()) for _ in dates],
                 [int(3e5 + 5e4 * rng.random()) for _ in dates], missing_price={dt.date(2021, 6, 12)})

    holders = [address(rng) for _ in range(400)]
    for name, token in TOKENS.items():
        malformed = 1234 if name == "sai" else None
        value, count = write_transfers(out / "transfers" / f"{name}.csv", rng, token, dates, eth, holders,
                                       iso_t=(name == "sai"), malformed_line=malformed)
        stable = [1.0 + 0.002 * rng.gauss(0, 1) for _ in dates]
        write_market(out / "market" / f"{name}.csv", dates, stable, 5e9 if name == "dai" else 2e7, value, count)


if __name__ == "__main__":
    main()
