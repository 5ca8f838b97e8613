#!/usr/bin/env python3
"""Writes the test fixture corpus: layouts, a product catalog with images,
geometry pages and OCR word files. Output is deterministic."""

import json
import os
import random
import sys

from PIL import Image

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests", "fixtures")

STYLE = """<style>
body { margin: 0; padding: 24px; width: 900px; }
h1 { font-size: 22px; margin: 0 0 16px; }
.row { margin: 8px 0; }
label { display: inline-block; width: 160px; }
input, select, textarea { width: 320px; font-size: 14px; }
.item { margin: 10px 0; }
.item img { width: 64px; height: 64px; vertical-align: middle; }
.totals div { margin: 4px 0; }
</style>"""


def page(title, body):
    return f"<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>{title}</title>\n{STYLE}\n</head><body>\n<h1>{title}</h1>\n{body}\n</body></html>\n"


def text_input(fid, label, ph=""):
    return (f'<div class="row"><label>{label}</label>'
            f'<input type="text" data-field="{fid}" data-pii="input_field" placeholder="{ph}"></div>')


def item(n, qty=True):
    q = f' x <span data-product="quantity">{{{{PRODUCT{n}_QTY}}}}</span>' if qty else ""
    return (f'<div class="item"><img data-product="product_image" src="{{{{PRODUCT{n}_IMAGE}}}}" alt="">'
            f' <span data-product="title">{{{{PRODUCT{n}_NAME}}}}</span>'
            f' <span data-product="price">${{{{PRODUCT{n}_PRICE}}}}</span>{q}</div>')


TOTALS = """<div class="totals">
<div>Subtotal: <span data-order="subtotal">${{ORDER_SUBTOTAL}}</span></div>
<div>Shipping: <span data-order="shipping">${{SHIPPING_COST}}</span></div>
<div>Tax: <span data-order="tax">${{ORDER_TAX}}</span></div>
<div>Total: <span data-order="total">${{ORDER_TOTAL}}</span></div>
</div>"""

STATES = ["", "CA", "NY", "TX", "WA", "IL"]


def state_select(fid):
    opts = "".join(f'<option value="{s}">{s or "State"}</option>' for s in STATES)
    return f'<div class="row"><label>State</label><select data-field="{fid}" data-pii="input_field">{opts}</select></div>'


def field(fid, key, order, kind="text", ph="", optional=False):
    d = {"id": fid, "input_kind": kind, "fill_order": order}
    if key:
        d["bound_key"] = key
    if ph:
        d["placeholder"] = ph
    if optional:
        d["optional"] = True
    return d


LAYOUTS = []


def layout(lid, brand, ptype, title, body, fields=(), spec=None):
    LAYOUTS.append((lid, {"layout_id": lid, "brand": brand, "page_type": ptype, "fields": list(fields),
                          "data_spec": spec or {}}, page(title, body)))


# Seven fields, two optional groups.
layout(
    "acme_checkout", "acme", "checkout", "Checkout",
    "\n".join([
        text_input("fullname", "Full name", "Full name"),
        text_input("street", "Street", "Street address"),
        text_input("city", "City", "City"),
        state_select("state"),
        text_input("zip", "ZIP", "ZIP code"),
        '<div data-optional="gift_note">'
        '<div class="row"><label>Gift message</label><textarea data-field="gift" data-pii="input_field" rows="2"></textarea></div>'
        "</div>",
        '<div data-optional="newsletter">'
        '<div class="row"><label>Newsletter</label><input type="checkbox" data-field="news" data-pii="input_field"></div>'
        "</div>",
        item(1),
        TOTALS,
    ]),
    [field("fullname", "PII_FULLNAME", 1, ph="Full name"), field("street", "PII_STREET", 2, ph="Street address"),
     field("city", "PII_CITY", 3, ph="City"), field("state", "PII_STATE", 4, kind="dropdown"),
     field("zip", "PII_ZIP", 5, ph="ZIP code"), field("gift", "PII_GIFT_MESSAGE", 6, optional=True),
     field("news", "", 7, kind="checkbox", optional=True)],
    {"optional_fields": [{"id": "gift_note", "probability": 0.5}, {"id": "newsletter", "probability": 0.5}],
     "extracted_constants": {"SHIPPING_COST": "5.99", "TAX_RATE": "0.0825"}},
)

# No fields.
layout(
    "acme_cart", "acme", "cart", "Your cart",
    "\n".join([item(1), item(2), item(3), TOTALS,
               '<div class="row">Ship to <span data-pii="name">{{PII_FULLNAME}}</span></div>']),
    [], {"extracted_constants": {"SHIPPING_COST": "0.00", "TAX_RATE": "0.07"}},
)

layout(
    "acme_receipt", "acme", "receipt", "Receipt",
    "\n".join([
        '<div class="row">Order <span data-order="order_id">{{ORDER_ID}}</span> placed <span data-order="date">{{ORDER_DATE}}</span></div>',
        item(1), item(2), TOTALS,
        '<div class="row" data-pii="address">{{PII_STREET}}<br>{{PII_CITY_STATE_ZIP}}</div>',
        '<div class="row">Card ending <span data-pii="payment">{{PII_CARD_LAST4}}</span></div>',
    ]),
    [], {"extracted_constants": {"SHIPPING_COST": "4.50", "TAX_RATE": "0.06"}},
)

layout(
    "northwind_sign_in", "northwind", "sign_in", "Sign in",
    "\n".join([text_input("user", "Username", "Username"), text_input("email", "Email", "Email address")]),
    [field("user", "PII_USERNAME", 1, ph="Username"), field("email", "PII_EMAIL", 2, ph="Email address")],
)

layout(
    "northwind_payment_entry", "northwind", "payment_entry", "Payment",
    "\n".join([text_input("holder", "Name on card", "Name on card"), text_input("card", "Card number", "Card number"),
               text_input("exp", "Expiry", "MM/YY"), text_input("cvv", "CVV", "CVV"),
               '<div class="row">Billing to <span data-pii="name">{{PII_FULLNAME}}</span></div>']),
    [field("holder", "PII_CARD_HOLDER", 1, ph="Name on card"), field("card", "PII_CARD_NUMBER", 2, ph="Card number"),
     field("exp", "PII_CARD_EXPIRY", 3, ph="MM/YY"), field("cvv", "PII_CARD_CVV", 4, ph="CVV")],
)

layout(
    "northwind_product_page", "northwind", "product_page", "Product",
    "\n".join([
        '<div class="item"><img data-product="product_image" src="{{PRODUCT1_IMAGE}}" alt="" style="width:200px;height:200px"></div>',
        '<div class="row" data-product="title">{{PRODUCT1_NAME}}</div>',
        '<div class="row">by <span data-product="brand">{{PRODUCT1_BRAND}}</span></div>',
        '<div class="row">Price: <span data-product="price">${{PRODUCT1_PRICE}}</span></div>',
        '<div class="row">Rated <span data-product="rating">{{PRODUCT1_RATING}}</span>'
        ' from <span data-product="reviews">{{PRODUCT1_REVIEWS}}</span> reviews</div>',
        '<div class="row" data-product="description">{{PRODUCT1_DESCRIPTION}}</div>',
        '<div class="row">Add to cart</div>',
        '<div class="item"><img data-product="product_image" src="{{RELATED1_IMAGE}}" alt="">'
        ' <span data-product="title">{{RELATED1_NAME}}</span></div>',
        '<div class="item"><img data-product="product_image" src="{{RELATED2_IMAGE}}" alt="">'
        ' <span data-product="title">{{RELATED2_NAME}}</span></div>',
    ]),
)

layout(
    "bluefin_delivery_shipping", "bluefin", "delivery_shipping", "Delivery",
    "\n".join([
        text_input("name", "Recipient", "Full name"), text_input("street", "Street", "Street"),
        text_input("street2", "Apt / Suite", "Apt"), text_input("city", "City", "City"), state_select("state"),
        '<div data-optional="notes"><div class="row"><label>Instructions</label>'
        '<textarea data-field="notes" data-pii="input_field" rows="2"></textarea></div></div>',
    ]),
    [field("name", "PII_FULLNAME", 1, ph="Full name"), field("street", "PII_STREET", 2, ph="Street"),
     field("street2", "PII_STREET2", 3, ph="Apt"), field("city", "PII_CITY", 4, ph="City"),
     field("state", "PII_STATE", 5, kind="dropdown"), field("notes", "PII_DELIVERY_INSTRUCTIONS", 6, optional=True)],
    {"optional_fields": [{"id": "notes", "probability": 0.5}]},
)

layout(
    "bluefin_order_tracking", "bluefin", "order_tracking", "Track your package",
    "\n".join([
        '<div class="row">Tracking number <span data-order="tracking">{{ORDER_TRACKING}}</span></div>',
        '<div class="row">Arriving <span data-order="date">{{ORDER_DELIVERY_DATE}}</span></div>',
        '<div class="row">Deliver to <span data-pii="name">{{PII_FULLNAME}}</span>,'
        ' <span data-pii="address">{{PII_STREET}}</span></div>',
        item(1, qty=False),
    ]),
)

layout(
    "kestrel_customer_info", "kestrel", "customer_info", "Your details",
    "\n".join([text_input("first", "First name", "First name"), text_input("last", "Last name", "Last name"),
               text_input("phone", "Phone", "Phone number")]),
    [field("first", "PII_FIRSTNAME", 1, ph="First name"), field("last", "PII_LASTNAME", 2, ph="Last name"),
     field("phone", "PII_PHONE", 3, ph="Phone number")],
)

layout(
    "kestrel_order_history", "kestrel", "order_history", "Orders",
    "\n".join([
        '<div class="row">Order <span data-order="order_id">{{ORDER_ID}}</span></div>',
        '<div class="row">Placed <span data-order="date">{{ORDER_DATE}}</span> for'
        ' <span data-pii="name">{{PII_FULLNAME}}</span></div>',
        item(1), item(2), TOTALS,
        '<div class="row">Contact <span data-pii="email">{{PII_EMAIL}}</span></div>',
    ]),
    [], {"extracted_constants": {"SHIPPING_COST": "7.25", "TAX_RATE": "0.0925"}},
)


ADJ = ["Amber", "Brisk", "Cedar", "Dusky", "Ember", "Frost", "Golden", "Harbor", "Ivory", "Juniper",
       "Kelp", "Lunar", "Maple", "Nimbus", "Olive", "Pebble", "Quartz", "Russet", "Sable", "Tidal"]
NOUN = ["Kettle", "Lantern", "Blanket", "Mug", "Backpack", "Notebook", "Candle", "Skillet", "Planter", "Scarf"]
BRANDS = ["Hollowell", "Pinecrest", "Marlowe", "Tessaro", "Quillby"]
CATS = ["home", "kitchen", "outdoor", "office"]


def catalog():
    rng = random.Random(7)
    cdir = os.path.join(ROOT, "catalog")
    idir = os.path.join(cdir, "images")
    os.makedirs(idir, exist_ok=True)
    lines = []
    n = 0
    for a in ADJ:
        for b in NOUN:
            n += 1
            pid = f"P{n:04d}"
            color = (rng.randrange(256), rng.randrange(256), rng.randrange(256))
            img = f"images/{pid}.png"
            Image.new("RGB", (48, 48), color).save(os.path.join(cdir, img), optimize=False)
            cents = rng.randrange(199, 25000)
            lines.append(json.dumps({
                "id": pid,
                "title": f"{a} {b}",
                "description": f"A {a.lower()} {b.lower()} for everyday use",
                "brand": BRANDS[n % len(BRANDS)],
                "category": CATS[n % len(CATS)],
                "price": f"{cents // 100}.{cents % 100:02d}",
                "image": img,
            }, sort_keys=True))
    with open(os.path.join(cdir, "products.ndjson"), "w") as f:
        f.write("\n".join(lines) + "\n")


# Geometry pages use the square font: every glyph is a 1em x 1em box.
GEO_STYLE = """<style>
@font-face { font-family: sq; src: url("../../fonts/sfsquare.ttf"); }
html, body { margin: 0; padding: 0; }
body { font-family: sq; font-size: 20px; line-height: 20px; width: 1000px; height: 800px; position: relative; }
.abs { position: absolute; white-space: nowrap; }
</style>"""


def geo(lid, body, fields=()):
    html = f"<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">\n{GEO_STYLE}\n</head><body>\n{body}\n</body></html>\n"
    meta = {"layout_id": lid, "brand": "geo", "page_type": "order_details", "fields": list(fields), "data_spec": {}}
    return lid, meta, html


GEOMETRY = [
    # ORDER_ID is 19 characters: 380 x 20 at (100, 50).
    geo("geo_absolute", '<div class="abs" style="left:100px;top:50px" data-order="order_id">{{ORDER_ID}}</div>'),
    # A modal fully covers the second element.
    geo("geo_modal",
        '<div class="abs" style="left:100px;top:50px" data-order="order_id">{{ORDER_ID}}</div>\n'
        '<div class="abs" style="left:100px;top:300px" data-order="tracking">{{ORDER_TRACKING}}</div>\n'
        '<div style="position:fixed;left:0;top:200px;width:1000px;height:300px;background:#fff;z-index:10"></div>'),
    # An overlay covers the element from x = 300 on: 200 of its 380 px stay visible.
    geo("geo_half",
        '<div class="abs" style="left:100px;top:50px" data-order="order_id">{{ORDER_ID}}</div>\n'
        '<div style="position:absolute;left:300px;top:0;width:700px;height:200px;background:#fff;z-index:10"></div>'),
    # 18 characters in a 7-em wide box wrap to three lines.
    geo("geo_wrap",
        '<div class="abs" style="left:100px;top:50px;width:140px;white-space:normal;word-break:break-all"'
        ' data-order="tracking">{{ORDER_TRACKING}}</div>'),
]


OCR = [
    # sample, text, x, y, w, h, conf
    ("s1", "Contact", 10, 10, 70, 16, 0.99), ("s1", "jane.doe@example.com", 90, 10, 180, 16, 0.97),
    ("s1", "Phone:", 10, 40, 60, 16, 0.99), ("s1", "(415)", 80, 40, 50, 16, 0.95),
    ("s1", "555-0134", 135, 40, 80, 16, 0.95),
    ("s1", "Card", 10, 70, 40, 16, 0.99), ("s1", "4111", 60, 70, 40, 16, 0.93), ("s1", "1111", 105, 70, 40, 16, 0.93),
    ("s1", "1111", 150, 70, 40, 16, 0.93), ("s1", "1111", 195, 70, 40, 16, 0.93),
    ("s1", "Add", 10, 100, 30, 16, 0.99), ("s1", "to", 45, 100, 20, 16, 0.99), ("s1", "cart", 70, 100, 35, 16, 0.99),
    ("s1", "Price:", 10, 130, 50, 16, 0.99), ("s1", "Subtotal", 10, 160, 70, 16, 0.99),
    ("s1", "Quantity", 10, 190, 70, 16, 0.99), ("s1", "Checkout", 10, 220, 80, 16, 0.99),
    ("s2", "Ship", 10, 10, 40, 16, 0.98), ("s2", "to", 55, 10, 20, 16, 0.98),
    ("s2", "Add", 10, 40, 30, 16, 0.99), ("s2", "to", 45, 40, 20, 16, 0.99), ("s2", "cart", 70, 40, 35, 16, 0.99),
    ("s2", "4111", 10, 70, 40, 16, 0.9), ("s2", "1111", 55, 70, 40, 16, 0.9), ("s2", "1111", 100, 70, 40, 16, 0.9),
    ("s2", "1112", 145, 70, 40, 16, 0.9),
]


def write_layout(base, lid, meta, html):
    d = os.path.join(base, lid)
    os.makedirs(d, exist_ok=True)
    with open(os.path.join(d, "page.html"), "w") as f:
        f.write(html)
    with open(os.path.join(d, "layout.meta"), "w") as f:
        f.write(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def main():
    for lid, meta, html in LAYOUTS:
        write_layout(os.path.join(ROOT, "layouts"), lid, meta, html)
    for lid, meta, html in GEOMETRY:
        write_layout(os.path.join(ROOT, "geometry"), lid, meta, html)
    catalog()
    os.makedirs(os.path.join(ROOT, "ocr"), exist_ok=True)
    with open(os.path.join(ROOT, "ocr", "words.ndjson"), "w") as f:
        for s, t, x, y, w, h, c in OCR:
            f.write(json.dumps({"sample_id": s, "text": t, "x": x, "y": y, "w": w, "h": h, "confidence": c}) + "\n")
    print(f"{len(LAYOUTS)} layouts, {len(GEOMETRY)} geometry pages", file=sys.stderr)


if __name__ == "__main__":
    main()
