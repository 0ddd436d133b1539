"""Published 77-digit splitting-coefficient literals bundled with the package.

Each entry lists the free parameters only: ``outer`` is the half of the
palindromic kick/drift family of length stages+1, ``inner`` the half of the
shorter family.  The symmetric completion in :mod:`sympint.coefficients`
reconstructs the full arrays.  ``native_mode`` records the harmonic-oscillator
decomposition under which the set attains ``declared_sho_order``.
"""

TABLE_ENTRIES = {
    "ABAs5o6H A": dict(
        scheme="ABA", stages=5, declared_sho_order=6, native_mode="aba",
        outer=[
            "0.1558593591762168313166117535752091422239663993391011462498104831549442591694",
            "-0.0070254990919573173514483364758218294773716640092220571342056284758867609611",
        ],
        inner=[
            "-0.6859195549562166768601873150414759494319985863677163820719179393682014399373",
            "0.9966295909529363159571451429325843698583459772292551181721475637244006507927",
        ],
    ),
    "ABAs5o6H B": dict(
        scheme="ABA", stages=5, declared_sho_order=6, native_mode="aba",
        outer=[
            "0.4020196038964999834667409950496227775945673320979099323902806525851620445492",
            "0.5329396856308538150258772262086702929451721575835842834460326556965220312130",
        ],
        inner=[
            "0.9110842375676615218574607388486783304139753525628699898390474132061253024968",
            "0.1740059542332660799009374186088931171982348451547482386207462271424421679090",
        ],
    ),
    "ABAs5o6H C": dict(
        scheme="ABA", stages=5, declared_sho_order=6, native_mode="aba",
        outer=[
            "0.1868565631155112597511173758337610451623768791420295598869906080256347098408",
            "0.5520581660514781484261043096825685955052553493857487316732455515112095793516",
        ],
        inner=[
            "0.5642486163110637621453746447826190031465518453448216443978248524452914255263",
            "-0.2393627021773294286793711975145735718917010075899623225091609656425715483488",
        ],
    ),
    "BABs6o7H": dict(
        scheme="BAB", stages=6, declared_sho_order=7, native_mode="bab",
        outer=[
            "0.0832701092493097690276300822599156817795619881080575430174826369500044839553",
            "0.3997273690963360211284395920007795550575060531634793748020207288976344439468",
            "-0.0541842778124726964199287659702152862181671805554302053695494244408226729818",
        ],
        inner=[
            "0.2475471587650765967910125296669232190787926795528258860075742877866898482465",
            "0.5446579217808193419580029125986805136192611468678745304306198457355253495088",
        ],
    ),
    "BABs6o5H": dict(
        scheme="BAB", stages=6, declared_sho_order=5, native_mode="bab",
        outer=[
            "0.0658831533161155021794371297629949214211270641450367882108652454225238292357",
            "-0.6711629060948253965117521242801468651670183829736696004743743104248379033034",
            "0.9736703100725350498414312651550857191131218932308788320806762063004096320895",
        ],
        inner=[
            "0.2265023974336291596186923088995152371194987043433278784212774210853229477086",
            "-0.0047799986678794678665602622568725658855054645768977416258774175978957628102",
        ],
    ),
    "BAB's6o5H": dict(
        scheme="BAB", stages=6, declared_sho_order=5, native_mode="bab-prime",
        outer=[
            "0.0650508268637574949487516678539036744380576078003520231297474895927182047842",
            "-0.3948051939117155639582651907195511796839512131373933326629623631591978696178",
            "0.6918498547904058960782554213200966000604457266088855079657967408955821538731",
        ],
        inner=[
            "0.2328962665845291347812910553597276545034489573682700034501734659308763580659",
            "-0.0111617638003721094728940473306267483522869816097800738075975236192041340802",
        ],
    ),
    "BABs7o7H": dict(
        scheme="BAB", stages=7, declared_sho_order=7, native_mode="bab",
        outer=[
            "0.0638745574250616045658401356462756092272737349204789877616691621039130680037",
            "-0.0650239777505938311516598494765811300128929849501107531440553736739769298894",
            "0.2509446105745547370613575645855473357282136355718617210088090794709222342775",
        ],
        inner=[
            "0.2752781729059777393394978710448690782125215018949186085075325605348526197756",
            "-0.0843138705589167473554015820986490036832890668438279781819362930106920807542",
            "0.1674497222006475614401177016323447087805836086414469568091358611098423440220",
        ],
    ),
    "BAB's7o6H": dict(
        scheme="BAB", stages=7, declared_sho_order=6, native_mode="bab-prime",
        outer=[
            "0.0522155297747848201407012160969040693245471580104797248381281194964273517726",
            "-0.0824972558529561412131911937717420514162728339681056503508469680313691406287",
            "0.3285541797987193353601113204079269672646845923663727576986276602617960257026",
        ],
        inner=[
            "0.2487563308365098625528031803769571289196558939258433219240690943143969198069",
            "-0.0651011247076581799932061212576878177123945470202647856511921757791017775052",
            "0.2480624780675545152650672751613106579864581926645260137078906816928505888862",
        ],
    ),
    "BAB's8o7H": dict(
        scheme="BAB", stages=8, declared_sho_order=7, native_mode="bab-prime",
        outer=[
            "0.0538184115480034769403763798524605188562842390760879592632218376015166638395",
            "0.1648743326910472361014809085317059425299121141031052090901977952513984878990",
            "0.3895399407808198068744134256203146340834631254960864069726823667050364522355",
            "-0.2288957415563594299572505173565338312542463595622272333825061768110435645417",
        ],
        inner=[
            "0.1486140577445185629163082471176700173109512976367237631150576219945233462284",
            "0.1071986675806227950500566279939336794589433458464489776124879870581484936262",
            "-0.0149646736494517061945681450558142918831874360003431672632178480031079700216",
        ],
    ),
    "BAB's9o7H": dict(
        scheme="BAB", stages=9, declared_sho_order=7, native_mode="bab-prime",
        outer=[
            "0.0464929004396589154281717058427105561306160230440930588914036807441235817244",
            "0.1549010127028879927850680477816652638346460615901974901213193690401204696252",
            "0.3197054828735917137611074311771339117602994884245091220333340037841616085048",
            "-0.1929200088157132136865513532391282410293753210475133631464188500663304857888",
        ],
        inner=[
            "0.1289555065927298176557065467802633438775379080212831185779306825670371511433",
            "0.1090764298548827040268039227200943338187149719339317536310302288046641781422",
            "-0.0138860356804715144111581981849964201100030653749527555344377031679795959892",
            "0.1837549745641803566768357217228586277331494085368674804908537743649129597425",
        ],
    ),
}
