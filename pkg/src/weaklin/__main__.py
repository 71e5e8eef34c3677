from weaklin.cli import main

raise SystemExit(main())
