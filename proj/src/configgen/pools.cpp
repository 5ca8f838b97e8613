#include "screenforge/configgen/pools.hpp"

namespace screenforge::configgen::pools {

namespace {

constexpr std::string_view kFirstNames[] = {
    "James", "Mary", "Robert", "Patricia", "John", "Jennifer", "Michael", "Linda",
    "David", "Elizabeth", "William", "Barbara", "Richard", "Susan", "Joseph", "Jessica",
    "Thomas", "Sarah", "Charles", "Karen", "Christopher", "Lisa", "Daniel", "Nancy",
    "Matthew", "Betty", "Anthony", "Margaret", "Mark", "Sandra", "Donald", "Ashley",
    "Steven", "Kimberly", "Paul", "Emily", "Andrew", "Donna", "Joshua", "Michelle",
    "Kenneth", "Carol", "Kevin", "Amanda", "Brian", "Dorothy", "George", "Melissa",
    "Timothy", "Deborah", "Ronald", "Stephanie", "Edward", "Rebecca", "Jason", "Sharon",
    "Jeffrey", "Laura", "Ryan", "Cynthia", "Jacob", "Kathleen", "Gary", "Amy",
    "Nicholas", "Angela", "Eric", "Shirley", "Jonathan", "Anna", "Stephen", "Brenda",
    "Larry", "Pamela", "Justin", "Emma", "Scott", "Nicole", "Brandon", "Helen",
    "Benjamin", "Samantha", "Samuel", "Katherine", "Gregory", "Christine", "Alexander", "Debra",
    "Frank", "Rachel", "Patrick", "Carolyn", "Raymond", "Janet", "Jack", "Catherine",
    "Dennis", "Maria", "Jerry", "Heather", "Tyler", "Diane", "Aaron", "Ruth",
    "Jose", "Julie", "Adam", "Olivia", "Nathan", "Joyce", "Henry", "Virginia",
    "Douglas", "Victoria", "Zachary", "Kelly", "Peter", "Lauren", "Kyle", "Christina",
    "Ethan", "Joan", "Walter", "Evelyn", "Noah", "Judith", "Jeremy", "Megan",
    "Christian", "Andrea", "Keith", "Cheryl", "Roger", "Hannah", "Terry", "Jacqueline",
    "Gerald", "Martha", "Harold", "Gloria", "Sean", "Teresa", "Austin", "Ann",
    "Carl", "Sara", "Arthur", "Madison", "Lawrence", "Frances", "Dylan", "Kathryn",
    "Jesse", "Janice", "Jordan", "Jean", "Bryan", "Abigail", "Billy", "Alice",
    "Joe", "Julia", "Bruce", "Judy", "Gabriel", "Sophia", "Logan", "Grace",
    "Albert", "Denise", "Willie", "Amber", "Alan", "Doris", "Juan", "Marilyn",
    "Wayne", "Danielle", "Elijah", "Beverly", "Randy", "Isabella", "Roy", "Theresa",
    "Vincent", "Diana", "Ralph", "Natalie", "Eugene", "Brittany", "Russell", "Charlotte",
    "Bobby", "Marie", "Mason", "Kayla", "Philip", "Alexis", "Louis", "Lori",
    "Marc", "Clara", "Oscar", "Ivy", "Hugo", "Nora", "Felix", "Iris",
    "Leon", "Mabel", "Victor", "Rosa", "Ivan", "Lydia", "Omar", "Elena",
    "Tobias", "Fiona", "Silas", "Greta", "Miles", "Hazel", "Jasper", "Wendy",
    "Rhys", "Paige", "Damon", "Yvonne", "Colin", "Tessa", "Grant", "Vera",
    "Malcolm", "Leah", "Reid", "Celia", "Quentin", "Daphne", "Elliot", "Ingrid",
    "Wesley", "Joanna", "Gavin", "Naomi", "Dean", "Priya", "Rohan", "Mei",
    "Kenji", "Aisha", "Tariq", "Sofia", "Mateo", "Lucia", "Diego", "Camila",
    "Andre", "Simone", "Rafael", "Yara", "Nikhil", "Anika", "Luca", "Chiara",
    "Emil", "Freya", "Otto", "Signe", "Arjun", "Leila", "Hassan", "Zara",
    "Caleb", "Ruby", "Declan", "Maeve", "Rowan", "Ada", "Everett", "Pearl",
    "Theo", "Willa",
};

constexpr std::string_view kLastNames[] = {
    "Smith", "Johnson", "Williams", "Brown", "Jones", "Garcia", "Miller", "Davis",
    "Rodriguez", "Martinez", "Hernandez", "Lopez", "Gonzalez", "Wilson", "Anderson", "Thomas",
    "Taylor", "Moore", "Jackson", "Martin", "Lee", "Perez", "Thompson", "White",
    "Harris", "Sanchez", "Clark", "Ramirez", "Lewis", "Robinson", "Walker", "Young",
    "Allen", "King", "Wright", "Scott", "Torres", "Nguyen", "Hill", "Flores",
    "Green", "Adams", "Nelson", "Baker", "Hall", "Rivera", "Campbell", "Mitchell",
    "Carter", "Roberts", "Gomez", "Phillips", "Evans", "Turner", "Diaz", "Parker",
    "Cruz", "Edwards", "Collins", "Reyes", "Stewart", "Morris", "Morales", "Murphy",
    "Cook", "Rogers", "Gutierrez", "Ortiz", "Morgan", "Cooper", "Peterson", "Bailey",
    "Reed", "Kelly", "Howard", "Ramos", "Kim", "Cox", "Ward", "Richardson",
    "Watson", "Brooks", "Chavez", "Wood", "James", "Bennett", "Gray", "Mendoza",
    "Ruiz", "Hughes", "Price", "Alvarez", "Castillo", "Sanders", "Patel", "Myers",
    "Long", "Ross", "Foster", "Jimenez", "Powell", "Jenkins", "Perry", "Russell",
    "Sullivan", "Bell", "Coleman", "Butler", "Henderson", "Barnes", "Gonzales", "Fisher",
    "Vasquez", "Simmons", "Romero", "Jordan", "Patterson", "Alexander", "Hamilton", "Graham",
    "Reynolds", "Griffin", "Wallace", "Moreno", "West", "Cole", "Hayes", "Bryant",
    "Herrera", "Gibson", "Ellis", "Tran", "Medina", "Aguilar", "Stevens", "Murray",
    "Ford", "Castro", "Marshall", "Owens", "Harrison", "Fernandez", "McDonald", "Woods",
    "Washington", "Kennedy", "Wells", "Vargas", "Henry", "Chen", "Freeman", "Webb",
    "Tucker", "Guzman", "Burns", "Crawford", "Olson", "Simpson", "Porter", "Hunter",
    "Gordon", "Mendez", "Silva", "Shaw", "Snyder", "Mason", "Dixon", "Munoz",
    "Hunt", "Hicks", "Holmes", "Palmer", "Wagner", "Black", "Robertson", "Boyd",
    "Rose", "Stone", "Salazar", "Fox", "Warren", "Mills", "Meyer", "Rice",
    "Schmidt", "Garza", "Daniels", "Ferguson", "Nichols", "Stephens", "Soto", "Weaver",
    "Ryan", "Gardner", "Payne", "Grant", "Dunn", "Kelley", "Spencer", "Hawkins",
    "Arnold", "Pierce", "Vazquez", "Hansen", "Peters", "Santos", "Hart", "Bradley",
    "Knight", "Elliott", "Cunningham", "Duncan", "Armstrong", "Hudson", "Carroll", "Lane",
    "Riley", "Andrews", "Alvarado", "Ray", "Delgado", "Berry", "Perkins", "Hoffman",
    "Johnston", "Matthews", "Pena", "Richards", "Contreras", "Willis", "Carpenter", "Lawrence",
    "Sandoval", "Guerrero", "George", "Chapman", "Rios", "Estrada", "Ortega", "Watkins",
    "Greene", "Nunez", "Wheeler", "Valdez", "Harper", "Burke", "Larson", "Santiago",
    "Maldonado", "Morrison", "Franklin", "Carlson", "Austin", "Dominguez", "Carr", "Lawson",
    "Jacobs", "Obrien", "Lynch", "Singh", "Vega", "Bishop", "Montgomery", "Oliver",
    "Jensen", "Harvey", "Williamson", "Gilbert", "Dean", "Sims", "Espinoza", "Howell",
    "Li", "Wong", "Reid", "Hanson", "Le", "McCoy", "Garrett", "Burton",
    "Fuller", "Wang", "Weber", "Welch", "Rojas", "Lucas", "Marquez", "Fields",
    "Park", "Yang", "Little", "Banks", "Padilla", "Day", "Walsh", "Bowman",
    "Schultz", "Luna", "Fowler", "Mejia", "Davidson", "Acosta", "Brewer", "May",
    "Holland", "Juarez", "Newman", "Pearson", "Curtis", "Cortez", "Douglas", "Schneider",
    "Joseph", "Barrett", "Navarro", "Figueroa", "Keller", "Avila", "Wade", "Molina",
    "Stanley", "Hopkins", "Campos", "Barnett", "Bates", "Chambers", "Caldwell", "Beck",
    "Lambert", "Miranda", "Byrd", "Craig", "Ayala", "Lowe", "Frazier", "Powers",
    "Neal", "Leonard", "Gregory", "Carrillo", "Sutton", "Fleming", "Rhodes", "Shelton",
    "Schwartz", "Norris", "Jennings", "Watts", "Duran", "Walters", "Cohen", "McDaniel",
    "Moran", "Parks", "Steele", "Vaughn", "Becker", "Holt", "Deleon", "Barker",
    "Terry", "Hale", "Leon", "Hail", "Benson", "Haynes", "Horton", "Miles",
    "Lyons", "Pham", "Graves", "Bush", "Thornton", "Wolfe", "Warner", "Cabrera",
    "McKinney", "Mann", "Zimmerman", "Dawson", "Lara", "Fletcher", "Page", "McCarthy",
    "Love", "Robles", "Cervantes", "Solis", "Erickson", "Reeves", "Chang", "Klein",
    "Salinas", "Fuentes", "Baldwin", "Daniel", "Simon", "Velasquez", "Hardy", "Higgins",
    "Aguirre", "Lin", "Cummings", "Chandler", "Sharp", "Barber", "Bowen", "Ochoa",
    "Dennis", "Robbins", "Liu", "Ramsey", "Francis", "Griffith", "Paul", "Blair",
    "Oconnor", "Cardenas", "Pacheco", "Cross", "Calderon", "Quinn", "Moss", "Swanson",
    "Chan", "Rivas", "Khan", "Rodgers", "Serrano", "Fitzgerald", "Rosales", "Stevenson",
    "Christensen", "Manning", "Gill", "Curry", "McLaughlin", "Harmon", "McGee", "Gross",
    "Doyle", "Garner", "Newton", "Burgess", "Reese", "Walton", "Blake", "Trujillo",
    "Adkins", "Brady", "Goodman", "Roman", "Webster", "Goodwin", "Fischer", "Huang",
    "Potter", "Delacruz", "Montoya", "Todd", "Wu", "Hines", "Mullins", "Castaneda",
    "Malone", "Cannon", "Tate", "Mack", "Sherman", "Hubbard", "Hodges", "Zhang",
    "Guerra", "Wolf", "Valencia", "Saunders", "Franco", "Rowe", "Gallagher", "Farmer",
    "Hammond", "Hampton", "Townsend", "Ingram", "Wise", "Gallegos", "Clarke", "Barton",
    "Schroeder", "Maxwell", "Waters", "Logan", "Camacho", "Strickland", "Norman", "Person",
    "Colon", "Parsons", "Frank", "Harrington", "Glover", "Osborne", "Buchanan", "Casey",
    "Floyd", "Patton", "Ibarra", "Ball", "Tyler", "Suarez", "Bowers", "Orozco",
    "Salas", "Cobb", "Gibbs", "Andrade", "Bauer", "Conner", "Moody", "Escobar",
    "McGuire", "Lloyd", "Mueller", "Hartman", "French", "Kramer", "McBride", "Pope",
    "Lindsey", "Velazquez", "Norton", "McCormick", "Sparks", "Flynn", "Yates", "Hogan",
    "Marsh", "Macias", "Villanueva", "Zamora", "Pratt", "Stokes", "Owen", "Ballard",
    "Lang", "Brock", "Villarreal", "Charles", "Drake", "Barrera", "Cain", "Patrick",
    "Pineda", "Burnett", "Mercado", "Santana", "Shepherd", "Bautista", "Ali", "Shaffer",
    "Lamb", "Trevino", "McKenzie", "Hess", "Beil", "Olsen", "Cochran", "Morton",
    "Nash", "Wilkins", "Petersen", "Briggs", "Shah", "Roth", "Nicholson", "Holloway",
    "Lozano", "Rangel", "Flowers", "Hoover", "Short", "Arias", "Mora", "Valenzuela",
    "Bryan", "Meyers", "Weiss", "Underwood", "Bass", "Greer", "Summers", "Houston",
    "Carson", "Morrow", "Clayton", "Whitaker", "Decker", "Yoder", "Collier", "Zuniga",
    "Carey", "Wilcox", "Melendez", "Poole", "Roberson", "Larsen", "Conley", "Davenport",
    "Copeland", "Massey", "Lam", "Huff", "Rocha", "Cameron", "Jefferson", "Hood",
    "Monroe", "Anthony", "Pittman", "Huynh", "Randall", "Singleton", "Kirk", "Combs",
    "Mathis", "Christian", "Skinner", "Bradford", "Richard", "Galvan", "Wall", "Boone",
    "Kirby", "Wilkinson", "Bridges", "Bruce", "Atkinson", "Velez", "Meza", "Roy",
    "Vincent", "York", "Hodge", "Villa", "Abbott", "Allison", "Tapia", "Gates",
    "Chase", "Sosa", "Sweeney", "Farrell", "Wyatt", "Dalton", "Horn", "Barron",
    "Phelps", "Yu", "Dickerson", "Heath", "Foley", "Atkins", "Mathews", "Bonilla",
    "Acevedo", "Benitez", "Zavala", "Hensley", "Glenn", "Cisneros", "Harrell", "Shields",
    "Rubio", "Huffman", "Choi", "Boyer", "Garrison", "Arroyo", "Bond", "Kane",
    "Hancock", "Callahan", "Dillon", "Cline", "Wiggins", "Grimes", "Arellano", "Melton",
    "Oneill", "Savage", "Ho", "Beltran", "Pitts", "Parrish", "Ponce", "Rich",
    "Booth", "Koch", "Golden", "Ware", "Brennan", "McDowell", "Marks", "Cantu",
    "Humphrey", "Baxter", "Sawyer", "Clay", "Tanner", "Hutchinson", "Kaur", "Berg",
    "Wiley", "Gilmore", "Russo", "Villegas", "Hobbs", "Keith", "Wilkerson", "Ahmed",
    "Beard", "McClain", "Montes", "Mata", "Rosario", "Vang", "Walter", "Henson",
    "Oneal", "Mosley", "McClure", "Beasley", "Stephenson", "Snow", "Huerta", "Preston",
    "Vance", "Barry", "Johns", "Eaton", "Blackwell", "Dyer", "Prince", "Macdonald",
    "Solomon", "Guevara", "Stafford", "English", "Hurst", "Woodard", "Cortes", "Shannon",
    "Kemp", "Nolan", "McCullough", "Merritt", "Murillo", "Moon", "Salgado", "Strong",
    "Kline", "Cordova", "Barajas", "Roach", "Rosas", "Winters", "Jacobson", "Lester",
    "Knox", "Bullock", "Kerr", "Leach", "Meadows", "Orr", "Davila", "Whitehead",
    "Pruitt", "Kent", "Conway", "McKee", "Barr", "David", "Dejesus", "Marin",
    "Berger", "McIntyre", "Blankenship", "Gaines", "Palacios", "Cuevas", "Bartlett", "Durham",
    "Dorsey", "McCall", "Odonnell", "Stein", "Browning", "Stout", "Lowery", "Sloan",
    "McLean", "Hendricks", "Calhoun", "Sexton", "Chung", "Gentry", "Hull", "Duarte",
    "Ellison", "Nielsen", "Gillespie", "Buck", "Middleton", "Sellers", "Leblanc", "Esparza",
    "Hardin", "Bradshaw", "McIntosh", "Howe", "Livingston", "Frost", "Glass", "Morse",
    "Knapp", "Herman", "Stark", "Bravo", "Noble", "Spears", "Weeks", "Corona",
    "Frederick", "Buckley", "McFarland", "Hebert", "Enriquez", "Hickman", "Quintero", "Randolph",
    "Schaefer", "Walls", "Trejo", "House", "Reilly", "Pennington", "Michael", "Conrad",
    "Giles", "Benjamin", "Crosby", "Fitzpatrick", "Donovan", "Mays", "Mahoney", "Valentine",
    "Raymond", "Medrano", "Hahn", "McMillan", "Small", "Bentley", "Felix", "Peck",
    "Lucero", "Boyle", "Hanna", "Pace", "Rush", "Hurley", "Harding", "McConnell",
    "Bernal", "Nava", "Ayers", "Everett", "Ventura", "Avery", "Pugh", "Mayer",
    "Bender", "Shepard", "McMahon", "Landry", "Case", "Sampson", "Moses", "Magana",
    "Blackburn", "Dunlap", "Gould", "Duffy", "Vaughan", "Herring", "McKay", "Espinosa",
    "Rivers", "Farley", "Bernard", "Ashley", "Friedman", "Potts", "Truong", "Costa",
    "Correa", "Blevins", "Nixon", "Clements", "Fry", "Delarosa", "Best", "Benton",
    "Lugo", "Portillo", "Dougherty", "Crane", "Haley", "Phan", "Villalobos", "Blanchard",
    "Horne", "Finley", "Quintana", "Lynn", "Esquivel", "Bean", "Dodson", "Mullen",
    "Xiong", "Hayden", "Cano", "Levy", "Huber", "Richmond", "Moyer", "Lim",
    "Frye", "Sheppard", "McCarty", "Avalos", "Booker", "Waller", "Parra", "Woodward",
    "Jaramillo", "Krueger", "Rasmussen", "Brandt", "Peralta", "Donaldson", "Stuart", "Faulkner",
    "Maynard", "Galindo", "Coffey", "Estes", "Sanford", "Burch", "Maddox", "Vo",
    "Oconnell", "Vu", "Andersen", "Spence", "McPherson", "Church", "Schmitt", "Stanton",
    "Leal", "Cherry", "Compton", "Dudley", "Sierra", "Pollard", "Alfaro", "Hester",
};

constexpr std::string_view kStreetNames[] = {
    "Hester", "Oak", "Maple", "Cedar", "Pine", "Elm", "Walnut", "Chestnut",
    "Willow", "Birch", "Spruce", "Aspen", "Juniper", "Magnolia", "Laurel", "Hawthorn",
    "Sycamore", "Poplar", "Cypress", "Redwood", "Hickory", "Alder", "Linden", "Beech",
    "Dogwood", "Holly", "Ivy", "Briar", "Fern", "Heather", "Meadow", "Prairie",
    "Valley", "Ridge", "Summit", "Canyon", "Mesa", "Harbor", "Bay", "Lake",
    "River", "Brook", "Creek", "Spring", "Fountain", "Forest", "Grove", "Orchard",
    "Garden", "Park", "Field", "Hill", "Highland", "Lowell", "Fairview", "Lakeview",
    "Riverside", "Sunset", "Sunrise", "Westwood", "Eastwood", "Northfield", "Southgate", "Kingston",
    "Queens", "Windsor", "Ashford", "Bedford", "Camden", "Dover", "Essex", "Fulton",
    "Granger", "Hamlin", "Irving", "Jasper", "Kendall", "Lancaster", "Madison", "Newport",
    "Oxford", "Preston", "Quincy", "Radcliffe", "Stratford", "Trenton", "Upton", "Vernon",
    "Warwick", "Yorktown", "Abbott", "Barlow", "Carver", "Dalton", "Emerson", "Franklin",
    "Garfield", "Hamilton", "Jefferson", "Kennedy", "Lincoln", "Monroe", "Norwood", "Olmsted",
    "Pierce", "Roosevelt", "Sheridan", "Taft", "Tyler", "Wallace", "Webster", "Whitman",
    "Wilson", "Adler", "Baxter", "Colby", "Dunbar", "Ellery", "Fenwick", "Gilman",
    "Hadley", "Ingram", "Jarvis", "Keene", "Lyman", "Mercer", "Nolan", "Osgood",
    "Pembroke", "Rutledge", "Sterling", "Thayer", "Vail", "Wendell", "Alcott", "Blaine",
    "Corbin", "Draper", "Elwood", "Foxhall", "Glendale", "Hollis", "Kimball", "Larkin",
    "Marlowe", "Nash", "Prescott", "Rowan", "Sawyer", "Thornton", "Whitby", "Amherst",
    "Brighton", "Clifton", "Danbury", "Eldridge", "Fairmont", "Greenwood", "Hartwell", "Inglewood",
    "Kensington", "Linwood", "Melrose", "Norfolk", "Oakmont", "Pinehurst", "Rockwell", "Shelby",
    "Tremont", "Vineland", "Wexford",
};

constexpr std::string_view kStreetSuffixes[] = {
    "Street", "Avenue", "Road", "Lane", "Drive", "Court", "Place", "Boulevard",
    "Way", "Terrace", "Circle", "Green", "Square", "Trail", "Parkway", "Row",
    "Crossing", "Path", "Run", "Point", "Heights", "Alley", "Loop", "Pike",
    "Commons", "Gardens", "Glen", "Hollow", "Manor", "Pass",
};

constexpr CityState kCities[] = {
    {"New York", "NY"}, {"Los Angeles", "CA"}, {"Chicago", "IL"}, {"Houston", "TX"},
    {"Phoenix", "AZ"}, {"Philadelphia", "PA"}, {"San Antonio", "TX"}, {"San Diego", "CA"},
    {"Dallas", "TX"}, {"San Jose", "CA"}, {"Austin", "TX"}, {"Jacksonville", "FL"},
    {"Fort Worth", "TX"}, {"Columbus", "OH"}, {"Charlotte", "NC"}, {"Indianapolis", "IN"},
    {"San Francisco", "CA"}, {"Seattle", "WA"}, {"Denver", "CO"}, {"Nashville", "TN"},
    {"Oklahoma City", "OK"}, {"El Paso", "TX"}, {"Boston", "MA"}, {"Portland", "OR"},
    {"Las Vegas", "NV"}, {"Detroit", "MI"}, {"Memphis", "TN"}, {"Louisville", "KY"},
    {"Baltimore", "MD"}, {"Milwaukee", "WI"}, {"Albuquerque", "NM"}, {"Tucson", "AZ"},
    {"Fresno", "CA"}, {"Sacramento", "CA"}, {"Mesa", "AZ"}, {"Kansas City", "MO"},
    {"Atlanta", "GA"}, {"Omaha", "NE"}, {"Colorado Springs", "CO"}, {"Raleigh", "NC"},
    {"Long Beach", "CA"}, {"Virginia Beach", "VA"}, {"Miami", "FL"}, {"Oakland", "CA"},
    {"Minneapolis", "MN"}, {"Tulsa", "OK"}, {"Bakersfield", "CA"}, {"Wichita", "KS"},
    {"Arlington", "TX"}, {"Aurora", "CO"}, {"Tampa", "FL"}, {"New Orleans", "LA"},
    {"Cleveland", "OH"}, {"Honolulu", "HI"}, {"Anaheim", "CA"}, {"Lexington", "KY"},
    {"Stockton", "CA"}, {"Henderson", "NV"}, {"Saint Paul", "MN"}, {"Cincinnati", "OH"},
    {"Pittsburgh", "PA"}, {"Greensboro", "NC"}, {"Anchorage", "AK"}, {"Plano", "TX"},
    {"Lincoln", "NE"}, {"Orlando", "FL"}, {"Irvine", "CA"}, {"Newark", "NJ"},
    {"Durham", "NC"}, {"Chula Vista", "CA"}, {"Toledo", "OH"}, {"Fort Wayne", "IN"},
    {"St. Petersburg", "FL"}, {"Laredo", "TX"}, {"Jersey City", "NJ"}, {"Chandler", "AZ"},
    {"Madison", "WI"}, {"Lubbock", "TX"}, {"Scottsdale", "AZ"}, {"Reno", "NV"},
    {"Buffalo", "NY"}, {"Gilbert", "AZ"}, {"Glendale", "AZ"}, {"North Las Vegas", "NV"},
    {"Winston-Salem", "NC"}, {"Chesapeake", "VA"}, {"Norfolk", "VA"}, {"Fremont", "CA"},
    {"Garland", "TX"}, {"Irving", "TX"}, {"Hialeah", "FL"}, {"Richmond", "VA"},
    {"Boise", "ID"}, {"Spokane", "WA"}, {"Baton Rouge", "LA"}, {"Tacoma", "WA"},
    {"San Bernardino", "CA"}, {"Modesto", "CA"}, {"Fontana", "CA"}, {"Des Moines", "IA"},
    {"Moreno Valley", "CA"}, {"Santa Clarita", "CA"}, {"Fayetteville", "NC"}, {"Birmingham", "AL"},
    {"Oxnard", "CA"}, {"Rochester", "NY"}, {"Port St. Lucie", "FL"}, {"Grand Rapids", "MI"},
    {"Huntsville", "AL"}, {"Salt Lake City", "UT"}, {"Frisco", "TX"}, {"Yonkers", "NY"},
    {"Amarillo", "TX"}, {"Glendale", "CA"}, {"Huntington Beach", "CA"}, {"McKinney", "TX"},
    {"Montgomery", "AL"}, {"Augusta", "GA"}, {"Aurora", "IL"}, {"Akron", "OH"},
    {"Little Rock", "AR"}, {"Tempe", "AZ"}, {"Columbus", "GA"}, {"Overland Park", "KS"},
    {"Grand Prairie", "TX"}, {"Tallahassee", "FL"}, {"Cape Coral", "FL"}, {"Mobile", "AL"},
    {"Knoxville", "TN"}, {"Shreveport", "LA"}, {"Worcester", "MA"}, {"Ontario", "CA"},
    {"Vancouver", "WA"}, {"Sioux Falls", "SD"}, {"Chattanooga", "TN"}, {"Brownsville", "TX"},
    {"Fort Lauderdale", "FL"}, {"Providence", "RI"}, {"Newport News", "VA"}, {"Rancho Cucamonga", "CA"},
    {"Santa Rosa", "CA"}, {"Peoria", "AZ"}, {"Oceanside", "CA"}, {"Elk Grove", "CA"},
    {"Salem", "OR"}, {"Pembroke Pines", "FL"}, {"Eugene", "OR"}, {"Garden Grove", "CA"},
    {"Cary", "NC"}, {"Fort Collins", "CO"}, {"Corona", "CA"}, {"Springfield", "MO"},
    {"Jackson", "MS"}, {"Alexandria", "VA"}, {"Hayward", "CA"}, {"Clarksville", "TN"},
    {"Lakewood", "CO"}, {"Lancaster", "CA"}, {"Salinas", "CA"}, {"Palmdale", "CA"},
    {"Hollywood", "FL"}, {"Springfield", "MA"}, {"Macon", "GA"}, {"Sunnyvale", "CA"},
    {"Pomona", "CA"}, {"Killeen", "TX"}, {"Escondido", "CA"}, {"Pasadena", "TX"},
    {"Naperville", "IL"}, {"Bellevue", "WA"}, {"Joliet", "IL"}, {"Murfreesboro", "TN"},
    {"Midland", "TX"}, {"Rockford", "IL"}, {"Paterson", "NJ"}, {"Savannah", "GA"},
    {"Bridgeport", "CT"}, {"Torrance", "CA"}, {"McAllen", "TX"}, {"Syracuse", "NY"},
    {"Surprise", "AZ"}, {"Denton", "TX"}, {"Roseville", "CA"}, {"Thornton", "CO"},
    {"Miramar", "FL"}, {"Pasadena", "CA"}, {"Mesquite", "TX"}, {"Olathe", "KS"},
    {"Dayton", "OH"}, {"Carrollton", "TX"}, {"Waco", "TX"}, {"Orange", "CA"},
    {"Fullerton", "CA"}, {"Charleston", "SC"}, {"West Valley City", "UT"}, {"Visalia", "CA"},
    {"Hampton", "VA"}, {"Gainesville", "FL"}, {"Warren", "MI"}, {"Coral Springs", "FL"},
    {"Cedar Rapids", "IA"}, {"Round Rock", "TX"}, {"Sterling Heights", "MI"}, {"Kent", "WA"},
    {"Columbia", "SC"}, {"Santa Clara", "CA"}, {"New Haven", "CT"}, {"Stamford", "CT"},
    {"Concord", "CA"}, {"Elizabeth", "NJ"}, {"Athens", "GA"}, {"Thousand Oaks", "CA"},
    {"Lafayette", "LA"}, {"Simi Valley", "CA"}, {"Topeka", "KS"}, {"Norman", "OK"},
    {"Fargo", "ND"}, {"Wilmington", "NC"}, {"Abilene", "TX"}, {"Odessa", "TX"},
    {"Columbia", "MO"}, {"Pearland", "TX"}, {"Victorville", "CA"}, {"Hartford", "CT"},
    {"Vallejo", "CA"}, {"Allentown", "PA"}, {"Berkeley", "CA"}, {"Richardson", "TX"},
    {"Arvada", "CO"}, {"Ann Arbor", "MI"}, {"Rochester", "MN"}, {"Cambridge", "MA"},
    {"Sugar Land", "TX"}, {"Lansing", "MI"}, {"Evansville", "IN"}, {"College Station", "TX"},
    {"Fairfield", "CA"}, {"Clearwater", "FL"}, {"Beaumont", "TX"}, {"Independence", "MO"},
    {"Provo", "UT"}, {"West Jordan", "UT"}, {"Murrieta", "CA"}, {"Palm Bay", "FL"},
    {"El Monte", "CA"}, {"Carlsbad", "CA"}, {"Charleston", "WV"}, {"Temecula", "CA"},
    {"Clovis", "CA"}, {"Springfield", "IL"}, {"Meridian", "ID"}, {"Westminster", "CO"},
    {"Costa Mesa", "CA"}, {"High Point", "NC"}, {"Manchester", "NH"}, {"Pueblo", "CO"},
    {"Lakeland", "FL"}, {"Pompano Beach", "FL"}, {"West Palm Beach", "FL"}, {"Antioch", "CA"},
    {"Everett", "WA"}, {"Downey", "CA"}, {"Lowell", "MA"}, {"Centennial", "CO"},
    {"Elgin", "IL"}, {"Broken Arrow", "OK"}, {"Miami Gardens", "FL"}, {"Billings", "MT"},
    {"Jurupa Valley", "CA"}, {"Sandy Springs", "GA"}, {"Gresham", "OR"}, {"Lewisville", "TX"},
    {"Hillsboro", "OR"}, {"Ventura", "CA"}, {"Greeley", "CO"}, {"Inglewood", "CA"},
    {"Waterbury", "CT"}, {"League City", "TX"}, {"Santa Maria", "CA"}, {"Tyler", "TX"},
    {"Davie", "FL"}, {"Daly City", "CA"}, {"Boulder", "CO"}, {"Allen", "TX"},
    {"West Covina", "CA"}, {"Sparks", "NV"}, {"Wichita Falls", "TX"}, {"Green Bay", "WI"},
    {"San Mateo", "CA"}, {"Norwalk", "CA"}, {"Rialto", "CA"}, {"Las Cruces", "NM"},
    {"Chico", "CA"}, {"El Cajon", "CA"}, {"Burbank", "CA"}, {"South Bend", "IN"},
    {"Renton", "WA"}, {"Vista", "CA"}, {"Davenport", "IA"}, {"Edinburg", "TX"},
    {"Tuscaloosa", "AL"}, {"Carmel", "IN"}, {"Spokane Valley", "WA"}, {"San Angelo", "TX"},
    {"Vacaville", "CA"}, {"Clinton", "MI"}, {"Bend", "OR"}, {"Woodbridge", "NJ"},
};

constexpr std::string_view kEmailDomains[] = {
    "example.com", "example.net", "example.org", "mail.example.com",
    "inbox.example.net", "post.example.org", "webmail.example.com", "letters.example.net",
};

constexpr std::string_view kAreaCodes[] = {
    "201", "202", "203", "205", "206", "207", "208", "209", "210", "212", "213", "214", "215", "216", "217", "218",
    "219", "224", "225", "228", "229", "231", "234", "239", "240", "248", "251", "252", "253", "254", "256", "260",
    "262", "267", "269", "270", "272", "276", "281", "301", "302", "303", "304", "305", "307", "308", "309", "310",
    "312", "313", "314", "315", "316", "317", "318", "319", "320", "321", "323", "325", "330", "331", "334", "336",
    "337", "339", "347", "351", "352", "360", "361", "364", "380", "385", "386", "401", "402", "404", "405", "406",
    "407", "408", "409", "410", "412", "413", "414", "415", "417", "419", "423", "424", "425", "430", "432", "434",
    "435", "440", "442", "443", "458", "469", "470", "475", "478", "479", "480", "484", "501", "502", "503", "504",
    "505", "507", "508", "509", "510", "512", "513", "515", "516", "517", "518", "520", "530", "531", "534", "539",
    "540", "541", "551", "559", "561", "562", "563", "564", "567", "570", "571", "573", "574", "575", "580", "585",
    "586", "601", "602", "603", "605", "606", "607", "608", "609", "610", "612", "614", "615", "616", "617", "618",
    "619", "620", "623", "626", "628", "629", "630", "631", "636", "641", "646", "650", "651", "657", "660", "661",
    "662", "667", "669", "678", "681", "682", "701", "702", "703", "704", "706", "707", "708", "712", "713", "714",
    "715", "716", "717", "718", "719", "720", "724", "725", "727", "731", "732", "734", "737", "740", "743", "747",
    "754", "757", "760", "762", "763", "765", "769", "770", "772", "773", "774", "775", "779", "781", "785", "786",
    "801", "802", "803", "804", "805", "806", "808", "810", "812", "813", "814", "815", "816", "817", "818", "828",
    "830", "831", "832", "843", "845", "847", "848", "850", "856", "857", "858", "859", "860", "862", "863", "864",
    "865", "870", "872", "878", "901", "903", "904", "906", "907", "908", "909", "910", "912", "913", "914", "915",
    "916", "917", "918", "919", "920", "925", "928", "929", "931", "936", "937", "938", "940", "941", "947", "949",
    "951", "952", "954", "956", "959", "970", "971", "972", "973", "978", "979", "980", "984", "985", "989",
};

constexpr std::string_view kMonths[] = {
    "January", "February", "March", "April", "May", "June",
    "July", "August", "September", "October", "November", "December",
};

}  // namespace

std::span<const std::string_view> first_names() { return kFirstNames; }
std::span<const std::string_view> last_names() { return kLastNames; }
std::span<const std::string_view> street_names() { return kStreetNames; }
std::span<const std::string_view> street_suffixes() { return kStreetSuffixes; }
std::span<const CityState> cities() { return kCities; }
std::span<const std::string_view> email_domains() { return kEmailDomains; }
std::span<const std::string_view> area_codes() { return kAreaCodes; }
std::span<const std::string_view> month_names() { return kMonths; }

}  // namespace screenforge::configgen::pools
