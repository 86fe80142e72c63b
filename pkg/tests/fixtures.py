"""XML fixture documents shared across the test modules."""

BOOKS = "http://example.org/books.owl"
TRAVEL = "http://example.org/travel.owl"
HEALTH = "http://example.org/health.owl"
CAMERA = "http://example.org/camera.owl"

# TC-style WSDL 1.1 document: one portType, one operation, annotations on a
# part, a global element and a named complexType.
NOVEL_WSDL = f"""<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="NovelDefinitions"
    targetNamespace="http://example.org/novel"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:tns="http://example.org/novel"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl">
  <wsdl:types>
    <xsd:schema targetNamespace="http://example.org/novel">
      <xsd:element name="AuthorName" type="xsd:string"
          sawsdl:modelReference="{BOOKS}#Author"/>
      <xsd:complexType name="GenreInfo">
        <xsd:sequence>
          <xsd:element name="GenreName" type="xsd:string"
              sawsdl:modelReference="{BOOKS}#Genre"/>
        </xsd:sequence>
      </xsd:complexType>
    </xsd:schema>
  </wsdl:types>
  <wsdl:message name="GetGenreRequest">
    <wsdl:part name="author" element="tns:AuthorName"/>
  </wsdl:message>
  <wsdl:message name="GetGenreResponse">
    <wsdl:part name="_GENRE" type="tns:GenreInfo"
        sawsdl:modelReference="{BOOKS}#Genre"/>
  </wsdl:message>
  <wsdl:portType name="NovelAuthorGenreSoap">
    <wsdl:operation name="get_AUTHOR_GENRE">
      <wsdl:input message="tns:GetGenreRequest"/>
      <wsdl:output message="tns:GetGenreResponse"/>
    </wsdl:operation>
  </wsdl:portType>
  <wsdl:service name="novel_authorgenre_service"/>
</wsdl:definitions>
""".encode()

# same structure, zero annotations
PLAIN_WSDL = b"""<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="PlainDefinitions"
    targetNamespace="http://example.org/plain"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:tns="http://example.org/plain"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema">
  <wsdl:types>
    <xsd:schema targetNamespace="http://example.org/plain">
      <xsd:element name="BookTitle" type="xsd:string"/>
    </xsd:schema>
  </wsdl:types>
  <wsdl:message name="PriceRequest">
    <wsdl:part name="title" element="tns:BookTitle"/>
  </wsdl:message>
  <wsdl:message name="PriceResponse">
    <wsdl:part name="price" type="xsd:float"/>
  </wsdl:message>
  <wsdl:portType name="BookPricePort">
    <wsdl:operation name="GetBookPrice">
      <wsdl:input message="tns:PriceRequest"/>
      <wsdl:output message="tns:PriceResponse"/>
    </wsdl:operation>
  </wsdl:portType>
  <wsdl:service name="book_price_service"/>
</wsdl:definitions>
"""

# one element carrying two space-separated annotation IRIs
TWO_IRI_WSDL = b"""<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="TwoIri"
    targetNamespace="http://example.org/two"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:tns="http://example.org/two"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl">
  <wsdl:message name="In">
    <wsdl:part name="pair" type="xsd:string"
        sawsdl:modelReference="http://a.example/onto#X http://b.example/onto#Y"/>
  </wsdl:message>
  <wsdl:portType name="PairPort">
    <wsdl:operation name="lookup">
      <wsdl:input message="tns:In"/>
    </wsdl:operation>
  </wsdl:portType>
</wsdl:definitions>
"""

# same IRI annotated on two nodes of the same tree
DUPLICATE_ANNOTATION_WSDL = f"""<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="Dup"
    targetNamespace="http://example.org/dup"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:tns="http://example.org/dup"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl">
  <wsdl:types>
    <xsd:schema targetNamespace="http://example.org/dup">
      <xsd:simpleType name="GenreToken" sawsdl:modelReference="{BOOKS}#Genre">
        <xsd:restriction base="xsd:string"/>
      </xsd:simpleType>
    </xsd:schema>
  </wsdl:types>
  <wsdl:message name="In">
    <wsdl:part name="genre" type="tns:GenreToken"
        sawsdl:modelReference="{BOOKS}#Genre"/>
  </wsdl:message>
  <wsdl:portType name="DupPort">
    <wsdl:operation name="classify">
      <wsdl:input message="tns:In"/>
    </wsdl:operation>
  </wsdl:portType>
</wsdl:definitions>
""".encode()

# part references a message type that does not exist
DANGLING_WSDL = b"""<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="Dangling"
    targetNamespace="http://example.org/dangling"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:tns="http://example.org/dangling"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema">
  <wsdl:message name="In">
    <wsdl:part name="payload" element="tns:NoSuchElement"/>
  </wsdl:message>
  <wsdl:portType name="DanglingPort">
    <wsdl:operation name="ping">
      <wsdl:input message="tns:In"/>
      <wsdl:output message="tns:Missing"/>
    </wsdl:operation>
  </wsdl:portType>
</wsdl:definitions>
"""

# WSDL 2.0 vocabulary: interface + operation with element references
WSDL20 = f"""<?xml version="1.0" encoding="UTF-8"?>
<description xmlns="http://www.w3.org/ns/wsdl"
    targetNamespace="http://example.org/w2"
    xmlns:tns="http://example.org/w2"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl">
  <types>
    <xsd:schema targetNamespace="http://example.org/w2">
      <xsd:element name="CityName" type="xsd:string"
          sawsdl:modelReference="{TRAVEL}#City"/>
      <xsd:element name="HotelList">
        <xsd:complexType>
          <xsd:sequence>
            <xsd:element name="Hotel" type="xsd:string"
                sawsdl:modelReference="{TRAVEL}#Hotel"/>
          </xsd:sequence>
        </xsd:complexType>
      </xsd:element>
    </xsd:schema>
  </types>
  <interface name="TravelInterface">
    <operation name="findHotels">
      <input element="tns:CityName"/>
      <output element="tns:HotelList"/>
    </operation>
  </interface>
  <service name="travel_hotel_service" interface="tns:TravelInterface"/>
</description>
""".encode()

NOT_WSDL = b"""<?xml version="1.0"?><catalog><item/></catalog>"""

NO_OPERATIONS_WSDL = b"""<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="Empty"
    targetNamespace="http://example.org/empty"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/">
  <wsdl:portType name="EmptyPort"/>
</wsdl:definitions>
"""

MALFORMED_XML = b"<wsdl:definitions><unclosed>"


def wsdl_with_annotation_at_depth(deep: bool) -> bytes:
    """Same annotation either directly on the part or on a nested simpleType."""
    if deep:
        schema = f"""
      <xsd:complexType name="Wrapper">
        <xsd:sequence>
          <xsd:element name="inner">
            <xsd:simpleType sawsdl:modelReference="{BOOKS}#Genre">
              <xsd:restriction base="xsd:string"/>
            </xsd:simpleType>
          </xsd:element>
        </xsd:sequence>
      </xsd:complexType>"""
        part = '<wsdl:part name="payload" type="tns:Wrapper"/>'
    else:
        schema = ""
        part = f'<wsdl:part name="payload" type="xsd:string" sawsdl:modelReference="{BOOKS}#Genre"/>'
    return f"""<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="Depth"
    targetNamespace="http://example.org/depth"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:tns="http://example.org/depth"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl">
  <wsdl:types>
    <xsd:schema targetNamespace="http://example.org/depth">{schema}
    </xsd:schema>
  </wsdl:types>
  <wsdl:message name="In">
    {part}
  </wsdl:message>
  <wsdl:portType name="DepthPort">
    <wsdl:operation name="probe">
      <wsdl:input message="tns:In"/>
    </wsdl:operation>
  </wsdl:portType>
</wsdl:definitions>
""".encode()


def simple_sawsdl(
    name: str,
    input_annotations=(),
    output_annotations=(),
    operation: str = "run",
    port: str = "Port",
) -> bytes:
    """Minimal one-operation document with annotations on message parts."""

    def parts(annotations, prefix):
        return "\n".join(
            f'    <wsdl:part name="{prefix}{i}" type="xsd:string" sawsdl:modelReference="{a}"/>'
            for i, a in enumerate(annotations)
        )

    return f"""<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="{name}Definitions"
    targetNamespace="http://example.org/{name}"
    xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
    xmlns:tns="http://example.org/{name}"
    xmlns:xsd="http://www.w3.org/2001/XMLSchema"
    xmlns:sawsdl="http://www.w3.org/ns/sawsdl">
  <wsdl:message name="{name}In">
{parts(input_annotations, "in")}
  </wsdl:message>
  <wsdl:message name="{name}Out">
{parts(output_annotations, "out")}
  </wsdl:message>
  <wsdl:portType name="{port}">
    <wsdl:operation name="{operation}">
      <wsdl:input message="tns:{name}In"/>
      <wsdl:output message="tns:{name}Out"/>
    </wsdl:operation>
  </wsdl:portType>
  <wsdl:service name="{name}"/>
</wsdl:definitions>
""".encode()


# ---------------------------------------------------------------------------
# ontologies

_RDF_HEAD = """<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
    xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"
    xmlns:owl="http://www.w3.org/2002/07/owl#">
"""


def ontology_from_axioms(axioms) -> bytes:
    """Serialize ("class"/"sub"/"equiv") axioms as RDF/XML."""
    lines = [_RDF_HEAD]
    classes = sorted({a[1] for a in axioms if a[0] == "class"})
    subs: dict[str, list[str]] = {}
    equivs: dict[str, list[str]] = {}
    for kind, *args in sorted(axioms):
        if kind == "sub":
            subs.setdefault(args[0], []).append(args[1])
        elif kind == "equiv":
            equivs.setdefault(args[0], []).append(args[1])
    for iri in classes:
        body = "".join(
            f'\n    <rdfs:subClassOf rdf:resource="{p}"/>' for p in subs.get(iri, [])
        ) + "".join(
            f'\n    <owl:equivalentClass rdf:resource="{e}"/>' for e in equivs.get(iri, [])
        )
        if body:
            lines.append(f'  <owl:Class rdf:about="{iri}">{body}\n  </owl:Class>\n')
        else:
            lines.append(f'  <owl:Class rdf:about="{iri}"/>\n')
    lines.append("</rdf:RDF>\n")
    return "".join(lines).encode()


# the four taxonomy pairs used throughout: superclass listed first
DESIRE_AXIOMS = {
    ("class", f"{BOOKS}#Genre"),
    ("class", f"{BOOKS}#Science_Fiction"),
    ("sub", f"{BOOKS}#Science_Fiction", f"{BOOKS}#Genre"),
    ("class", f"{HEALTH}#MedicalOrganization"),
    ("class", f"{HEALTH}#Hospital"),
    ("sub", f"{HEALTH}#Hospital", f"{HEALTH}#MedicalOrganization"),
    ("class", f"{TRAVEL}#UrbanArea"),
    ("class", f"{TRAVEL}#City"),
    ("sub", f"{TRAVEL}#City", f"{TRAVEL}#UrbanArea"),
    ("class", f"{CAMERA}#Zoom"),
    ("class", f"{CAMERA}#OpticalZoom"),
    ("sub", f"{CAMERA}#OpticalZoom", f"{CAMERA}#Zoom"),
}

DESIRE_ONTOLOGY = ontology_from_axioms(DESIRE_AXIOMS)

BOOKS_ONTOLOGY = ontology_from_axioms(
    {
        ("class", f"{BOOKS}#Genre"),
        ("class", f"{BOOKS}#Science_Fiction"),
        ("class", f"{BOOKS}#Author"),
        ("class", f"{BOOKS}#Novel"),
        ("sub", f"{BOOKS}#Science_Fiction", f"{BOOKS}#Genre"),
    }
)

SINGLE_CLASS_ONTOLOGY = ontology_from_axioms({("class", f"{BOOKS}#Lonely")})

EQUIV_CHAIN_ONTOLOGY = ontology_from_axioms(
    {
        ("class", "http://x.example/o#A"),
        ("class", "http://x.example/o#B"),
        ("class", "http://x.example/o#C"),
        ("equiv", "http://x.example/o#A", "http://x.example/o#B"),
        ("sub", "http://x.example/o#B", "http://x.example/o#C"),
    }
)

EMPTY_ONTOLOGY = _RDF_HEAD.encode() + b"</rdf:RDF>\n"
