# eop_report root package
